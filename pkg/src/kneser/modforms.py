"""Exact q-expansions of level-one modular forms.

Everything here is integer arithmetic on truncated power series in q.
The discriminant form supplies tau(n), the one-dimensional cusp spaces
in weights 12..22 supply the eigenvalue sequences tau_k(n), and a small
table of genus-2 Hecke eigenvalues (embedded verbatim, checksummed)
feeds the Harder congruence check.

Eisenstein series are built from divisor-power sums.  Those closed
formulas are deliberately not trusted: the identity E4^3 - E6^2 =
1728*Delta ties them to the product expansion of Delta and is exercised
by the test suite at full precision.
"""

from __future__ import annotations

from functools import lru_cache

__all__ = [
    "QSeries",
    "Genus2EigenTable",
    "GENUS2_TABLE",
    "delta",
    "tau",
    "eisenstein",
    "eigenform",
    "cuspform_basis",
    "dim_cuspforms",
    "eigen_lookup",
    "harder_check",
    "r_leech",
]

EIGENFORM_WEIGHTS = (12, 16, 18, 20, 22)


class QSeries:
    """Power series in q with integer coefficients, truncated at q^N.

    Parameters
    ----------
    coeffs : iterable of int
        Coefficients a(0), a(1), ..., a(N).
    weight : int, optional
        Modular weight tag.  Propagated through products (weights add)
        and through sums of equal weight; otherwise dropped.
    """

    __slots__ = ("coeffs", "weight")

    def __init__(self, coeffs, weight=None):
        self.coeffs = tuple(int(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("a series needs at least the constant term")
        self.weight = weight

    @property
    def precision(self):
        """Largest exponent with a stored coefficient."""
        return len(self.coeffs) - 1

    def a(self, n):
        """Coefficient of q^n."""
        if not 0 <= n <= self.precision:
            raise IndexError(f"coefficient {n} is beyond precision {self.precision}")
        return self.coeffs[n]

    def __getitem__(self, n):
        return self.a(n)

    def truncate(self, N):
        """Copy of the series cut to precision N (N <= current)."""
        if N > self.precision:
            raise ValueError(f"cannot extend precision {self.precision} to {N}")
        return QSeries(self.coeffs[: N + 1], weight=self.weight)

    def _join_weight(self, other):
        if self.weight is not None and self.weight == other.weight:
            return self.weight
        return None

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        N = min(self.precision, other.precision)
        coeffs = [self.coeffs[i] + other.coeffs[i] for i in range(N + 1)]
        return QSeries(coeffs, weight=self._join_weight(other))

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        N = min(self.precision, other.precision)
        coeffs = [self.coeffs[i] - other.coeffs[i] for i in range(N + 1)]
        return QSeries(coeffs, weight=self._join_weight(other))

    def __mul__(self, other):
        if isinstance(other, int):
            return QSeries([c * other for c in self.coeffs], weight=self.weight)
        if not isinstance(other, QSeries):
            return NotImplemented
        N = min(self.precision, other.precision)
        coeffs = [0] * (N + 1)
        for i, ci in enumerate(self.coeffs[: N + 1]):
            if ci == 0:
                continue
            for j in range(N + 1 - i):
                cj = other.coeffs[j]
                if cj:
                    coeffs[i + j] += ci * cj
        weight = None
        if self.weight is not None and other.weight is not None:
            weight = self.weight + other.weight
        return QSeries(coeffs, weight=weight)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("series powers take a non-negative integer exponent")
        result = QSeries([1] + [0] * self.precision, weight=0 if self.weight is not None else None)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.precision >= 6 else ""
        w = f", weight={self.weight}" if self.weight is not None else ""
        return f"QSeries([{head}{tail}] up to q^{self.precision}{w})"


def _divisor_power_sums(k, N):
    """sigma_k(n) for n = 0..N, with the n = 0 slot set to 0."""
    sums = [0] * (N + 1)
    for d in range(1, N + 1):
        dk = d**k
        for m in range(d, N + 1, d):
            sums[m] += dk
    return sums


@lru_cache(maxsize=None)
def _eta24_coeffs(N):
    # prod (1-q^n) expanded by the pentagonal number theorem, then the
    # 24th power by squaring: 24 = 16 + 8.
    euler = [0] * (N + 1)
    euler[0] = 1
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        g2 = j * (3 * j + 1) // 2
        if g1 > N:
            break
        sign = -1 if j % 2 else 1
        euler[g1] += sign
        if g2 <= N:
            euler[g2] += sign
        j += 1
    e = QSeries(euler)
    e8 = ((e * e) * (e * e)) ** 2
    return (e8 * e8 * e8).coeffs


@lru_cache(maxsize=None)
def delta(N):
    """The weight-12 cusp form q * prod_{n>=1} (1-q^n)^24, to precision N.

    Coefficients are the Ramanujan tau values: ``delta(N).a(n) == tau(n)``.
    """
    if N < 1:
        raise ValueError("need precision at least 1")
    eta = _eta24_coeffs(N - 1)
    return QSeries((0,) + eta, weight=12)


def tau(n):
    """Ramanujan tau(n)."""
    if n < 1:
        raise ValueError("tau(n) needs n >= 1")
    return delta(n).a(n)


@lru_cache(maxsize=None)
def eisenstein(k, N):
    """Normalized Eisenstein series E_k (constant term 1) to precision N.

    Weights 4 and 6 come from divisor-power sums; E8 = E4^2 and
    E10 = E4*E6 follow from the one-dimensionality of those weights.
    E_0 is the constant series 1.
    """
    if k == 0:
        return QSeries([1] + [0] * N, weight=0)
    if k == 4:
        sums = _divisor_power_sums(3, N)
        return QSeries([1] + [240 * s for s in sums[1:]], weight=4)
    if k == 6:
        sums = _divisor_power_sums(5, N)
        return QSeries([1] + [-504 * s for s in sums[1:]], weight=6)
    if k == 8:
        return eisenstein(4, N) ** 2
    if k == 10:
        return eisenstein(4, N) * eisenstein(6, N)
    raise ValueError(f"Eisenstein weight {k} is not supported (use 0, 4, 6, 8 or 10)")


@lru_cache(maxsize=None)
def eigenform(k, N):
    """The normalized cusp eigenform of weight k in {12, 16, 18, 20, 22}.

    These weights have a one-dimensional cusp space, so the product
    Delta * E_{k-12} is automatically the Hecke eigenform once its
    q-coefficient is 1.  ``eigenform(k, N).a(p)`` is tau_k(p).
    """
    if k not in EIGENFORM_WEIGHTS:
        raise ValueError(f"weight {k} has no one-dimensional cusp space; pick one of {EIGENFORM_WEIGHTS}")
    f = delta(N) * eisenstein(k - 12, N)
    assert f.a(0) == 0 and f.a(1) == 1
    return QSeries(f.coeffs, weight=k)


def dim_cuspforms(k):
    """Dimension of the weight-k cusp space for level one, k even >= 0."""
    if k < 0 or k % 2:
        raise ValueError("weight must be a non-negative even integer")
    if k == 2:
        return 0
    d = k // 12
    if k % 12 == 2:
        d -= 1
    return d


def cuspform_basis(k, N=None):
    """Monomial basis Delta^j * E4^a * E6^b of the weight-k cusp space.

    The j-th element has leading term q^j, so the list is echelonized by
    construction and its length equals ``dim_cuspforms(k)``.
    """
    if k < 0 or k % 2:
        raise ValueError("weight must be a non-negative even integer")
    if N is None:
        N = k // 12 + 2
    basis = []
    d = delta(N)
    for j in range(1, k // 12 + 1):
        m = k - 12 * j
        if m == 2:
            # no monomial in E4, E6 has weight 2; this j is the one the
            # dimension formula discounts
            continue
        if m % 4 == 0:
            a, b = m // 4, 0
        else:
            a, b = (m - 6) // 4, 1
        f = d**j * eisenstein(4, N) ** a * eisenstein(6, N) ** b
        assert all(f.a(i) == 0 for i in range(j)) and f.a(j) == 1
        basis.append(QSeries(f.coeffs, weight=k))
    return basis


# Hecke eigenvalues tau_{j,k}(p) of the four vector-valued Siegel cusp
# forms of genus 2 that appear in the rank-24 neighbor matrices.  Keyed
# by (j, k); row order (6,8), (8,8), (12,6), (4,10).
_GENUS2_FORMS = ((6, 8), (8, 8), (12, 6), (4, 10))

_GENUS2_ROWS = {
    2: (0, 1344, -240, -1680),
    3: (-27000, -6408, 68040, 55080),
    5: (2843100, -30774900, 14765100, -7338900),
    7: (-107822000, 451366384, -334972400, 609422800),
    11: (3760397784, 13030789224, 3580209624, 25358200824),
    13: (9952079500, -328006712228, 91151149180, -263384451140),
    17: (243132070500, 5520456217764, -11025016477020, -2146704955740),
    19: (595569231400, -28220918878760, -22060913325080, 43021727413960),
    23: (-6848349930000, 79689608755152, 195863810691120, -233610984201360),
    29: (53451678149100, -1105748270340, -1743496339579620, -545371828324260),
    31: (234734887975744, 1851264166857664, 1979302106496064, 830680103136064),
    37: (448712646713500, 22115741387845324, -3685951226317460, 11555498201265580),
    41: (-1267141915544076, -29442241674311916, 106065086529460884, -56208480716702316),
    43: (-1828093644641000, 308109789751260712, 74859021001125400, 160336767963955000),
    47: (-6797312934516000, 43932618784857504, 156108802652634720, -116311331328502560),
}

_GENUS2_CHECKSUM = 670671521960876736


class Genus2EigenTable:
    """Lookup table (j, k, p) -> tau_{j,k}(p) for the four genus-2 forms.

    Verified against an embedded checksum at construction.
    """

    def __init__(self, rows=None):
        rows = dict(_GENUS2_ROWS) if rows is None else dict(rows)
        self._values = {}
        for p, vals in rows.items():
            if len(vals) != len(_GENUS2_FORMS):
                raise ValueError(f"row p={p} must list {len(_GENUS2_FORMS)} eigenvalues")
            for (j, k), v in zip(_GENUS2_FORMS, vals):
                self._values[(j, k, p)] = int(v)
        if rows == _GENUS2_ROWS and sum(self._values.values()) != _GENUS2_CHECKSUM:
            raise AssertionError("genus-2 eigenvalue table is corrupted")

    @property
    def forms(self):
        return _GENUS2_FORMS

    @property
    def primes(self):
        return tuple(sorted({p for (_, _, p) in self._values}))

    def lookup(self, j, k, p):
        try:
            return self._values[(j, k, p)]
        except KeyError:
            raise KeyError(f"no tabulated eigenvalue for (j, k, p) = ({j}, {k}, {p})") from None

    def __contains__(self, key):
        return key in self._values

    def __len__(self):
        return len(self._values)


GENUS2_TABLE = Genus2EigenTable()


def eigen_lookup(j, k, p):
    """Tabulated genus-2 eigenvalue tau_{j,k}(p)."""
    return GENUS2_TABLE.lookup(j, k, p)


def harder_check(p):
    """Check tau_{4,10}(p) == tau_22(p) + p^8 + p^13 modulo 41."""
    t410 = eigen_lookup(4, 10, p)
    t22 = eigenform(22, p).a(p)
    return (t410 - t22 - p**8 - p**13) % 41 == 0


def r_leech(p):
    """Number of p-neighbors of any Niemeier lattice with roots that are
    isometric to the rootless one: 65520/691 * (1 + p^11 - tau(p)).
    """
    factor = 1 + p**11 - tau(p)
    if factor % 691:
        raise ArithmeticError(f"1 + p^11 - tau(p) is not divisible by 691 at p={p}; p is not prime")
    return 65520 * (factor // 691)
