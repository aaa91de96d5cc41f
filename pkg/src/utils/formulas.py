"""
Exact closed forms for weak saturation numbers.
All values are integers; half-integral expressions are computed from their doubled form.
"""

from math import comb

from src.utils.exceptions import InvalidParameterError, WsatErrorCodes


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise InvalidParameterError(message, WsatErrorCodes.INVALID_RANGE)


def half_exact(doubled: int) -> int:
    """Halve an integer that must be even"""
    if doubled % 2 != 0:
        raise ArithmeticError(f"{doubled} is not even")
    return doubled // 2


def wsat_clique(n: int, r: int) -> int:
    """wsat(K_n, K_r) = C(n,2) - C(n-r+2,2)"""
    _require(2 <= r <= n, f"need 2 <= r <= n, got n={n}, r={r}")
    return comb(n, 2) - comb(n - r + 2, 2)


def wsat_ktt(n: int, t: int) -> int:
    """wsat(K_n, K_{t,t}) = (t-1)(n+1-t/2), computed as (t-1)(2n+2-t)/2"""
    _require(t >= 2 and n >= 0, f"need t >= 2, got t={t}")
    return half_exact((t - 1) * (2 * n + 2 - t))


def wsat_ktt1(n: int, t: int) -> int:
    """wsat(K_n, K_{t,t+1}) = (t-1)(n+1-t/2) + 1"""
    return wsat_ktt(n, t) + 1


def kst_upper(n: int, s: int, t: int) -> int:
    """Upper bound (s-1)(n-s) + C(t,2) on wsat(K_n, K_{s,t})"""
    _require(2 <= s < t, f"need 2 <= s < t, got s={s}, t={t}")
    return (s - 1) * (n - s) + comb(t, 2)


def kst_lower(n: int, s: int, t: int) -> int:
    """Lower bound (s-1)(n-t+1) + C(t,2) on wsat(K_n, K_{s,t})"""
    _require(2 <= s < t, f"need 2 <= s < t, got s={s}, t={t}")
    return (s - 1) * (n - t + 1) + comb(t, 2)


def kst_gap(s: int, t: int) -> int:
    """Difference between the upper and lower bounds, independent of n"""
    _require(2 <= s < t, f"need 2 <= s < t, got s={s}, t={t}")
    return (t - s - 1) * (s - 1)


def alon_bisaturation(ell: int, m: int, s: int, t: int) -> int:
    """w(l, m, K_{s,t}) = l*m - (l-s+1)(m-t+1) for 2 <= s <= t, 2 <= l <= m"""
    _require(2 <= s <= t, f"need 2 <= s <= t, got s={s}, t={t}")
    _require(2 <= ell <= m, f"need 2 <= l <= m, got l={ell}, m={m}")
    return ell * m - (ell - s + 1) * (m - t + 1)


def wsat_bipartite(ell: int, m: int, s: int, t: int) -> int:
    """wsat(K_{l,m}, K_{s,t}) = (l+m-s+1)(s-1) + (t-s)^2 for 2 <= s <= l, t <= m"""
    _require(2 <= s <= ell and s <= t <= m, f"need 2 <= s <= l, s <= t <= m, got l={ell}, m={m}, s={s}, t={t}")
    return (ell + m - s + 1) * (s - 1) + (t - s) ** 2


def wsat_balanced_bipartite(n: int, s: int, t: int) -> int:
    """wsat(K_{n,n}, K_{s,t}) = n^2 - (n-s+1)^2 + (t-s)^2"""
    _require(2 <= s <= t <= n, f"need 2 <= s <= t <= n, got n={n}, s={s}, t={t}")
    return n * n - (n - s + 1) ** 2 + (t - s) ** 2


def rel_upper(ell: int, m: int, s: int, t: int) -> int:
    """Bound wsat(K_{l+m}, K_{s,t}) <= wsat(K_{l,m}, K_{s,t}) + C(t,2); tight when s = t"""
    return wsat_bipartite(ell, m, s, t) + comb(t, 2)


def fkt_edges(n: int, k: int, t: int) -> int:
    """Edge count of the multipartite construction F_n^{k,t}"""
    _require(k >= 2 and t >= 1 and n >= t * k - 1, f"need k >= 2, t >= 1, n >= tk-1, got n={n}, k={k}, t={t}")
    sizes = [t] * (k - 1) + [t - 1]
    multipartite = (sum(sizes) ** 2 - sum(a * a for a in sizes)) // 2
    z = n - t * k + 1
    return comb(t, 2) + multipartite + z * (sum(sizes) - t)


def trivial_lower(n: int, s: int) -> int:
    """Every vertex of a weakly (K_n, K_{s,t})-saturated graph has degree >= s-1"""
    _require(s >= 1 and n >= 0, f"need s >= 1, got s={s}")
    return -(-n * (s - 1) // 2)
