"""Decision procedure, certificates, and explicit witnesses for hook commutation.

A Jordan type Q of weight n + m occurs in the nilpotent commutant of a
nilpotent matrix of hook type (n, 1^m) exactly when Q splits as a multiset
union Q = mu + ar(n', k) in one of three families:

  case a:  n' = n,     |mu| = m,     1 <= k <= n, no side condition;
  case b:  n' = n - 1, |mu| = m + 1, k * mu_1 >= n - 1, 1 <= k <= n - 1;
  case c:  n' = n - 2, |mu| = m + 2, 1 <= k <= n - 2, and either
           mu = (m + 2) with k * (m + 1) > n - 1, or
           mu_2 >= 2 with k * mu_2 > n - 1.

``decide`` finds every such decomposition; ``witness`` turns one into an
explicit commuting nilpotent matrix of type Q and verifies it before
returning.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .commutant import HookType, UBParams, build_ub, commutes, jordan_matrix
from .errors import ResourceLimitError, VerificationError, WitnessUnavailableError
from .linalg import ExactMatrix, jordan_type_of
from .partitions import (
    Partition,
    ar,
    concat,
    enumerate_partitions,
    is_almost_rectangular,
    is_universally_commuting,
    subtract,
)

ENV_MAX_SIZE = "HOOKCOMM_MAX_N"
DEFAULT_MAX_SIZE = 25

_AR_SHIFT = {"a": 0, "b": 1, "c": 2}


@dataclass(frozen=True, slots=True)
class CommutationCertificate:
    """One decomposition Q = mu + ar(n - shift, k) proving commutation.

    ``delta`` is the corner coefficient used by the case b witness: 0 when
    k * mu_1 >= n and -1 when k * mu_1 = n - 1.  It is None for cases a
    and c and for the all-ones mu of case b.
    """

    case: str
    k: int
    mu: Partition
    delta: int | None = None

    def ar_size(self, hook: HookType) -> int:
        return hook.n - _AR_SHIFT[self.case]

    def commuting_type(self, hook: HookType) -> Partition:
        """The Jordan type this certificate certifies."""
        return concat(self.mu, ar(self.ar_size(hook), self.k))

    def to_obj(self) -> dict:
        obj = {"case": self.case, "k": self.k, "mu": list(self.mu.parts)}
        if self.delta is not None:
            obj["delta"] = str(self.delta)
        return obj

    @classmethod
    def from_obj(cls, obj: dict) -> "CommutationCertificate":
        try:
            case = str(obj["case"])
            k = int(obj["k"])
            mu = Partition(obj["mu"])
            delta = int(obj["delta"]) if "delta" in obj else None
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed certificate: {exc}") from exc
        return cls(case, k, mu, delta)


def _case_b_delta(hook: HookType, k: int, mu: Partition) -> int | None:
    if mu[0] == 1:
        return None
    return 0 if k * mu[0] >= hook.n else -1


def decide(hook: HookType, Q: Partition) -> list[CommutationCertificate]:
    """All certificates that Q occurs in the nilpotent commutant of the hook.

    Empty list means Q does not commute.  Certificates are ordered case a,
    then b, then c, with k increasing; the same Q may be certified several
    times and no deduplication is performed.
    """
    n, m = hook.n, hook.m
    if Q.weight != hook.size:
        raise ValueError(f"|Q| = {Q.weight} but the hook has size {hook.size}")
    certs: list[CommutationCertificate] = []
    for k in range(1, n + 1):
        mu = subtract(Q, ar(n, k))
        if mu is not None:
            certs.append(CommutationCertificate("a", k, mu))
    for k in range(1, n):
        mu = subtract(Q, ar(n - 1, k))
        if mu is not None and k * mu[0] >= n - 1:
            certs.append(CommutationCertificate("b", k, mu, _case_b_delta(hook, k, mu)))
    for k in range(1, n - 1):
        mu = subtract(Q, ar(n - 2, k))
        if mu is None:
            continue
        if len(mu) == 1:
            if k * (m + 1) > n - 1:
                certs.append(CommutationCertificate("c", k, mu))
        elif mu[1] >= 2 and k * mu[1] > n - 1:
            certs.append(CommutationCertificate("c", k, mu))
    return certs


def validate_certificate(hook: HookType, cert: CommutationCertificate) -> None:
    """Raise ValueError unless cert is a valid certificate for this hook."""
    n, m = hook.n, hook.m
    if cert.case not in _AR_SHIFT:
        raise ValueError(f"unknown case {cert.case!r}")
    shift = _AR_SHIFT[cert.case]
    if not 1 <= cert.k <= n - shift:
        raise ValueError(f"case {cert.case} needs 1 <= k <= {n - shift}, got {cert.k}")
    if cert.mu.weight != m + shift:
        raise ValueError(
            f"case {cert.case} needs |mu| = {m + shift}, got {cert.mu.weight}"
        )
    if cert.case == "a":
        expected = None
    elif cert.case == "b":
        if not cert.mu or cert.k * cert.mu[0] < n - 1:
            raise ValueError(f"case b needs k * mu_1 >= {n - 1}")
        expected = _case_b_delta(hook, cert.k, cert.mu)
    else:
        if len(cert.mu) == 1:
            if cert.k * (m + 1) <= n - 1:
                raise ValueError(f"case c with one part needs k * (m + 1) > {n - 1}")
        elif len(cert.mu) >= 2 and cert.mu[1] >= 2:
            if cert.k * cert.mu[1] <= n - 1:
                raise ValueError(f"case c needs k * mu_2 > {n - 1}")
        else:
            raise ValueError("case c needs mu = (m + 2) or mu_2 >= 2")
        expected = None
    if cert.delta != expected and not (cert.case == "b" and cert.delta is None):
        raise ValueError(f"certificate delta {cert.delta} should be {expected}")


def _lower_shift_v_rows(m: int, blocks: list[int]) -> tuple:
    """Strictly lower triangular coordinates of J(blocks)^T inside an m x m slot."""
    V = [[0] * m for _ in range(m)]
    off = 0
    for s in blocks:
        for t in range(s - 1):
            V[off + t + 1][off + t] = 1
        off += s
    if off != m:
        raise ValueError(f"blocks {blocks} do not fill an {m} x {m} slot")
    return tuple(tuple(V[j][i] for i in range(j)) for j in range(1, m))


def _witness_params(
    hook: HookType, cert: CommutationCertificate
) -> tuple[UBParams, CommutationCertificate | None]:
    """Coordinates of a witness for cert.

    Returns (params, replacement) where replacement is the certificate the
    construction actually used: case c with mu_1 <= 2 has no direct
    construction and falls back to a case a or b certificate for the same
    type, which always exists for those types.
    """
    validate_certificate(hook, cert)
    n, m = hook.n, hook.m
    k, mu = cert.k, cert.mu
    zero = UBParams.zero(hook)
    h = tuple(1 if i == k else 0 for i in range(1, n))

    if cert.case == "a":
        return (
            UBParams(hook, h=h, u=zero.u, d=zero.d, v=_lower_shift_v_rows(m, list(mu.parts))),
            None,
        )

    if cert.case == "b":
        if mu[0] == 1:
            # mu = (1^{m+1}) forces k = n - 1 and Q = (1^{n+m}): the zero matrix.
            return zero, None
        blocks = [mu[0] - 1] + [mu[i] for i in range(1, len(mu))]
        delta = _case_b_delta(hook, k, mu)
        u = tuple(delta if j == mu[0] - 1 else 0 for j in range(1, m + 1))
        d = tuple(1 if j == 1 else 0 for j in range(1, m + 1))
        return (
            UBParams(hook, h=h, u=u, d=d, v=_lower_shift_v_rows(m, blocks)),
            None,
        )

    if mu[0] <= 2:
        alternatives = [
            c for c in decide(hook, cert.commuting_type(hook)) if c.case != "c"
        ]
        if not alternatives:
            raise WitnessUnavailableError(
                f"no construction for case c certificate {cert} and no fallback found"
            )
        params, _ = _witness_params(hook, alternatives[0])
        return params, alternatives[0]

    if len(mu) == 1:
        blocks = [m]
        corner = m
    else:
        blocks = [mu[0] - 1, mu[1] - 1] + [mu[i] for i in range(2, len(mu))]
        blocks = [b for b in blocks if b > 0]
        corner = mu[0] + mu[1] - 2
    u = tuple(1 if j == corner else 0 for j in range(1, m + 1))
    d = tuple(1 if j == 1 else 0 for j in range(1, m + 1))
    return (
        UBParams(hook, h=h, u=u, d=d, v=_lower_shift_v_rows(m, blocks)),
        None,
    )


def witness(hook: HookType, cert: CommutationCertificate) -> ExactMatrix:
    """Explicit nilpotent matrix commuting with the hook, of the type cert names.

    The result is checked before it is returned: it commutes with
    ``jordan_matrix(hook.partition)``, is nilpotent, and its Jordan type is
    ``cert.commuting_type(hook)``.  A failed check raises VerificationError.
    """
    params, _ = _witness_params(hook, cert)
    A = build_ub(hook, params)
    expected = cert.commuting_type(hook)
    report = jordan_type_of(A)
    if report.jordan_type != expected:
        raise VerificationError(
            f"witness for {cert} has type {report.jordan_type}, expected {expected}"
        )
    if not commutes(A, jordan_matrix(hook.partition)):
        raise VerificationError(f"witness for {cert} does not commute with the hook")
    return A


def _size_cap(cap: int | None) -> int:
    if cap is not None:
        return cap
    raw = os.environ.get(ENV_MAX_SIZE)
    if raw is None:
        return DEFAULT_MAX_SIZE
    try:
        return int(raw)
    except ValueError as exc:
        raise ValueError(f"{ENV_MAX_SIZE} must be an integer, got {raw!r}") from exc


def enumerate_commuting(hook: HookType, cap: int | None = None) -> list[Partition]:
    """All Jordan types in the nilpotent commutant of the hook, descending lex.

    Sizes above the cap (default 25, overridable via the HOOKCOMM_MAX_N
    environment variable or the cap argument) are refused.
    """
    limit = _size_cap(cap)
    if hook.size > limit:
        raise ResourceLimitError(
            f"hook size {hook.size} exceeds the enumeration cap {limit}"
        )
    return [Q for Q in enumerate_partitions(hook.size) if decide(hook, Q)]


def d_hook(hook: HookType) -> Partition:
    """The dominance largest Jordan type commuting with the hook.

    Equals (n, m) when n >= m + 2 and (m + 2, n - 2) otherwise; in both
    shapes the two parts differ by at least 2.
    """
    if hook.n >= hook.m + 2:
        return Partition((hook.n, hook.m))
    return Partition((hook.m + 2, hook.n - 2))


def known_commutes(P: Partition, Q: Partition) -> bool | None:
    """Commutation answer for pairs covered by closed-form criteria.

    Handles types with all parts at most 2 (commute with everything), one
    part types (commute exactly with almost rectangular types), and hooks.
    Returns None when no implemented criterion applies.
    """
    if P.weight != Q.weight:
        raise ValueError("pair must have equal weight")
    if is_universally_commuting(P) or is_universally_commuting(Q):
        return True
    if len(P) == 1:
        return is_almost_rectangular(Q)
    if len(Q) == 1:
        return is_almost_rectangular(P)
    for first, second in ((P, Q), (Q, P)):
        if first[0] >= 3 and all(p == 1 for p in first.parts[1:]):
            return bool(decide(HookType(first[0], len(first) - 1), second))
    return None


def classification_table(
    N: int, include_universal: bool = False, cap: int | None = None
) -> list[dict]:
    """Rows of the commutation table for all hooks of size N.

    Each row maps a hook to the commuting types grouped by certificate case
    (a type appears in every case column that certifies it) plus the types
    that do not commute.  Types with all parts at most 2 are omitted from
    the case columns unless ``include_universal`` is set.
    """
    if N < 4:
        raise ValueError(f"no hooks of size {N}")
    rows = []
    for n in range(N - 1, 2, -1):
        hook = HookType(n, N - n)
        limit = _size_cap(cap)
        if hook.size > limit:
            raise ResourceLimitError(
                f"hook size {hook.size} exceeds the enumeration cap {limit}"
            )
        by_case = {"a": [], "b": [], "c": []}
        non_commuting = []
        for Q in enumerate_partitions(N):
            certs = decide(hook, Q)
            if not certs:
                non_commuting.append(Q)
                continue
            if not include_universal and is_universally_commuting(Q):
                continue
            for case in by_case:
                if any(c.case == case for c in certs):
                    by_case[case].append(Q)
        rows.append(
            {
                "hook": hook,
                "a": by_case["a"],
                "b": by_case["b"],
                "c": by_case["c"],
                "non_commuting": non_commuting,
            }
        )
    return rows
