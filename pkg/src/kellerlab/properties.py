"""Deciders and certificate verifiers for the condition chain on maps x + H.

The chain, strongest first:

    (***)  H = sum of n-1 powers (c_i^t x)^{d_i} b_i, orthogonality
           c_j^t b_i = 0 for i >= j, and independent b_i
    (**)   same with exactly n-1 terms, independence dropped
    (*)    same with any number N of terms
    (JC+)  det of the Jacobian of x+H summed over n generic points is a
           nonzero constant
    (JC)   same with deg-1 points
    (JC-)  x + H is invertible

(*) is decided through strong nilpotence: the product of n copies of JH at
n tuples of fresh indeterminates vanishes identically iff H is linearly
triangularizable with nilpotent Jacobian.  (**) and (***) are verified via
explicit certificates; their failure is asserted only by two sound
desk-scale oracles (single-term matching in dimension 2, and the
one-dimensional component-span argument).  (JC-) is never decided in the
negative: the verdict is holds only when an inverse is exhibited.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .exactfield import Field, Scalar
from .multipoly import (LinearForm, MultiPoly, is_pure_power, lift_to_field,
                        rename_variables)
from .polymap import (PolyMap, PolyMatrix, conjugate, jacobian, map_compose,
                      matrix_det, matrix_is_nilpotent, invert_triangular,
                      nonlinear_part)

__all__ = [
    "HOLDS",
    "FAILS",
    "UNDECIDED",
    "PropertyReport",
    "StarCertificate",
    "is_keller",
    "is_quasi_translation",
    "substituted_jacobian_sum",
    "strong_nilpotence_product",
    "check_sum_condition",
    "verify_sum_witness",
    "is_strongly_nilpotent",
    "decide_star",
    "verify_star_certificate",
    "certificate_failure",
    "triangularization_from_certificate",
    "certificate_from_triangularization",
    "conjugated_power_term",
    "chain_report",
    "CHAIN_CONDITIONS",
]

HOLDS = "holds"
FAILS = "fails"
UNDECIDED = "undecided"

CHAIN_CONDITIONS = (
    "keller", "nilpotent", "quasi", "jc_minus", "jc", "jc_plus",
    "strong_nilpotent", "star", "doublestar", "triplestar",
)


class PropertyReport:
    """Per-condition verdicts with witnesses that re-verify on failure."""

    def __init__(self):
        self.conditions = {}
        self.witnesses = {}
        self.notes = {}

    def record(self, name: str, verdict: str, witness=None, note: str | None = None):
        if verdict not in (HOLDS, FAILS, UNDECIDED):
            raise ValueError(f"unknown verdict {verdict!r}")
        self.conditions[name] = verdict
        if witness is not None:
            self.witnesses[name] = witness
        if note is not None:
            self.notes[name] = note
        return self

    def verdict(self, name: str) -> str:
        return self.conditions[name]

    def holds(self, name: str) -> bool:
        return self.conditions[name] == HOLDS

    def witness(self, name: str):
        return self.witnesses.get(name)

    @property
    def sole_verdict(self) -> str:
        if len(self.conditions) != 1:
            raise ValueError("report covers more than one condition")
        return next(iter(self.conditions.values()))

    def merge(self, other: "PropertyReport") -> "PropertyReport":
        self.conditions.update(other.conditions)
        self.witnesses.update(other.witnesses)
        self.notes.update(other.notes)
        return self

    def __repr__(self):
        body = ", ".join(f"{k}={v}" for k, v in sorted(self.conditions.items()))
        return f"PropertyReport({body})"


# -- basic map-level checks -------------------------------------------------

def is_keller(map_: PolyMap) -> bool:
    """det JF is a nonzero constant."""
    if not map_.is_square:
        raise ValueError("Keller check needs a square map")
    det = matrix_det(jacobian(map_))
    return det.is_constant() and not det.is_zero()


def is_quasi_translation(map_: PolyMap) -> bool:
    """F = x + H with H(x - H) = H, equivalently (x+H) o (x-H) = x."""
    h = nonlinear_part(map_)
    x_minus_h = PolyMap.identity(map_.field, map_.nvars) - h
    image = map_compose(h, x_minus_h)
    return image == h


# -- sums and products of substituted Jacobians ------------------------------

def _fresh_substitution(n: int, block: int, total: int):
    """Variable mapping sending x_j to the j-th coordinate of point `block`."""
    return [n + block * n + j for j in range(n)]


def substituted_jacobian_sum(map_: PolyMap, count: int) -> PolyMatrix:
    """Sum of JF at `count` tuples of fresh indeterminates.

    The result lives in n + count*n variables: the original ones followed by
    the points v_1, ..., v_count in a fixed order.
    """
    if not map_.is_square:
        raise ValueError("Jacobian sums need a square map")
    if count < 1:
        raise ValueError("need at least one substitution point")
    n = map_.nvars
    total = n + count * n
    jac = jacobian(map_)
    acc = None
    for b in range(count):
        mapping = _fresh_substitution(n, b, total)
        block = jac.map_entries(lambda e: rename_variables(e, mapping, total))
        acc = block if acc is None else acc + block
    return acc


def _univariate_rational_roots(poly: MultiPoly):
    """All rational roots of a univariate polynomial over Q, ascending."""
    if poly.nvars != 1 or not poly.field.is_rational:
        raise ValueError("rational root search needs a univariate rational polynomial")
    coeffs = {}
    for exps, coeff in poly.terms.items():
        coeffs[exps[0]] = coeff.as_rational()
    if not coeffs:
        return []
    low = min(coeffs)
    if low > 0:
        # factor out t^low; t = 0 is a root
        coeffs = {e - low: c for e, c in coeffs.items()}
    deg = max(coeffs)
    if deg == 0:
        return [Fraction(0)] if low > 0 else []
    denom_lcm = 1
    for c in coeffs.values():
        denom_lcm = denom_lcm * c.denominator // _gcd(denom_lcm, c.denominator)
    ints = {e: int(c * denom_lcm) for e, c in coeffs.items()}
    lead = ints[deg]
    const = ints[0]
    roots = set([Fraction(0)]) if low > 0 else set()
    for p in _divisors(abs(const)):
        for q in _divisors(abs(lead)):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                val = sum(c * cand ** e for e, c in ints.items())
                if val == 0:
                    roots.add(cand)
    return sorted(roots)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _divisors(n):
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _point_witness(map_: PolyMap, det: MultiPoly, count: int):
    """Search for concrete points where the summed-Jacobian determinant is 0.

    Pattern: repeat a unit point e_m and perturb the last point to
    e_m + s e_j for a single coordinate s; the restricted determinant is
    univariate in s.  A rational root gives a base-field witness; a rootless
    quadratic gives a witness in the corresponding quadratic extension.
    """
    n = map_.nvars
    field = map_.field
    total = n + count * n
    if det.is_zero():
        zero = field.zero()
        return field, [[zero] * n for _ in range(count)]
    if not field.is_rational:
        return None
    for m in range(n):
        for j in range(n):
            if j == m:
                continue
            # coordinates: originals 0, points e_m, last point e_m + s e_j
            s_var = MultiPoly.variable(field, 1, 0)
            values = []
            for idx in range(total):
                block = (idx - n) // n if idx >= n else None
                coord = (idx - n) % n if idx >= n else None
                if block is None:
                    values.append(MultiPoly.zero(field, 1))
                elif coord == m:
                    values.append(MultiPoly.constant(field, 1, 1))
                elif block == count - 1 and coord == j:
                    values.append(s_var)
                else:
                    values.append(MultiPoly.zero(field, 1))
            restricted = det.substitute(values)
            if restricted.is_zero():
                roots = [Fraction(0)]
            elif restricted.is_constant():
                continue
            else:
                roots = _univariate_rational_roots(restricted)
            if roots:
                s_value = field.scalar(roots[0])
                return field, _pattern_points(field, n, count, m, j, s_value)
            # rootless quadratic: adjoin a root exactly
            if restricted.degree() == 2:
                c2 = restricted.terms.get((2,), field.zero()).as_rational()
                c1 = restricted.terms.get((1,), field.zero()).as_rational()
                c0 = restricted.terms.get((0,), field.zero()).as_rational()
                ext = Field([c0 / c2, c1 / c2, 1])
                s_value = ext.generator()
                return ext, _pattern_points(ext, n, count, m, j, s_value)
    return None


def _pattern_points(field: Field, n: int, count: int, m: int, j: int, s_value: Scalar):
    points = []
    for b in range(count):
        point = [field.zero()] * n
        point[m] = field.one()
        if b == count - 1:
            point[j] = point[j] + s_value
        points.append(point)
    return points


def verify_sum_witness(map_: PolyMap, field: Field, points) -> bool:
    """Re-run the determinant at the witness points; must be exactly zero."""
    n = map_.nvars
    jac = jacobian(map_)
    acc = None
    for point in points:
        block = jac.map_entries(
            lambda e: MultiPoly.constant(field, n, lift_to_field(e, field).evaluate(point)))
        acc = block if acc is None else acc + block
    return matrix_det(acc).is_zero()


def check_sum_condition(map_: PolyMap, count: int, label: str = "sum_condition") -> PropertyReport:
    """Decide whether det(sum of JF at `count` generic points) is a nonzero constant.

    count = deg F - 1 realizes the deg-1-point condition, count = n the
    full condition.  Since the field is infinite and algebraically closed
    points are allowed, a non-constant symbolic determinant means failure.
    """
    if not map_.is_square:
        raise ValueError("sum condition needs a square map")
    if count < 1:
        raise ValueError("need at least one substitution point")
    det = matrix_det(substituted_jacobian_sum(map_, count))
    report = PropertyReport()
    if det.is_constant() and not det.is_zero():
        return report.record(label, HOLDS,
                             note=f"determinant is the constant {det.constant_value()!r}")
    found = _point_witness(map_, det, count)
    if found is not None:
        field, points = found
        if not verify_sum_witness(map_, field, points):
            raise ArithmeticError("witness points failed re-verification")
        witness = {"kind": "points", "field": field, "points": points}
        return report.record(label, FAILS, witness=witness,
                             note="determinant vanishes at the witness points")
    witness = {"kind": "symbolic_determinant", "determinant": det}
    return report.record(label, FAILS, witness=witness,
                         note="determinant is not a nonzero constant")


def strong_nilpotence_product(map_: PolyMap, count: int | None = None) -> PolyMatrix:
    """Product of JH at `count` (default n) tuples of fresh indeterminates."""
    if not map_.is_square:
        raise ValueError("strong nilpotence needs a square map")
    n = map_.nvars
    if count is None:
        count = n
    total = n + count * n
    jac = jacobian(map_)
    acc = None
    for b in range(count):
        mapping = _fresh_substitution(n, b, total)
        block = jac.map_entries(lambda e: rename_variables(e, mapping, total))
        acc = block if acc is None else acc @ block
    return acc


def _axis_zero_jacobian(map_: PolyMap, index: int) -> PolyMatrix:
    """JH with x_index set to 0 and the other variables kept symbolic."""
    field, n = map_.field, map_.nvars
    assignment = [MultiPoly.zero(field, n) if i == index else MultiPoly.variable(field, n, i)
                  for i in range(n)]
    return jacobian(map_).substitute(assignment)


def is_strongly_nilpotent(map_: PolyMap) -> PropertyReport:
    """Does the product of n substituted copies of JH vanish identically?

    Fails fast when JH itself is not nilpotent.  On failure the witness is a
    non-nilpotent two-factor product with single coordinates zeroed out when
    such a pair exists, otherwise a nonzero entry of the symbolic product.
    """
    report = PropertyReport()
    if not map_.is_square:
        raise ValueError("strong nilpotence needs a square map")
    n = map_.nvars
    jac = jacobian(map_)
    if not matrix_is_nilpotent(jac):
        power = jac.power(n)
        entry = _first_nonzero_entry(power)
        return report.record("strong_nilpotent", FAILS,
                             witness={"kind": "matrix_entry", "row": entry[0],
                                      "col": entry[1], "value": entry[2]},
                             note="Jacobian is not nilpotent")
    product = strong_nilpotence_product(map_)
    if product.is_zero():
        return report.record("strong_nilpotent", HOLDS)
    for p in range(n):
        for q in range(n):
            two = _axis_zero_jacobian(map_, p) @ _axis_zero_jacobian(map_, q)
            if not matrix_is_nilpotent(two):
                witness = {"kind": "substitution_product",
                           "factors": [f"x{p + 1}=0", f"x{q + 1}=0"],
                           "diagonal": two.diagonal()}
                return report.record("strong_nilpotent", FAILS, witness=witness,
                                     note="two substituted factors already compose to a "
                                          "non-nilpotent product")
    entry = _first_nonzero_entry(product)
    witness = {"kind": "matrix_entry", "row": entry[0], "col": entry[1], "value": entry[2]}
    return report.record("strong_nilpotent", FAILS, witness=witness,
                         note="n-fold substituted product is nonzero")


def _first_nonzero_entry(matrix: PolyMatrix):
    for i in range(matrix.rows):
        for j in range(matrix.cols):
            if not matrix.entries[i][j].is_zero():
                return i, j, matrix.entries[i][j]
    raise ValueError("matrix is zero")


def decide_star(map_: PolyMap) -> PropertyReport:
    """Decide the sum-of-powers form (*) through strong nilpotence.

    Strong nilpotence is equivalent to linear triangularizability with zero
    diagonal; with H(0) = 0 that property is in turn equivalent to (*).  For
    H(0) != 0 only the triangularizability reading is asserted and (*) stays
    undecided.
    """
    strong = is_strongly_nilpotent(map_)
    verdict = strong.verdict("strong_nilpotent")
    report = PropertyReport()
    report.record("triangularizable", verdict, witness=strong.witness("strong_nilpotent"))
    if map_.vanishes_at_origin():
        report.record("star", verdict, witness=strong.witness("strong_nilpotent"))
    else:
        report.record("star", UNDECIDED,
                      note="H(0) != 0: only the triangularizability reading is decided")
    return report


# -- star certificates --------------------------------------------------------

LEVELS = ("star", "doublestar", "triplestar")


class StarCertificate:
    """Triples (c_i, d_i, b_i) witnessing H = sum (c_i^t x)^{d_i} b_i.

    The declared level is one of star, doublestar, triplestar; the listed
    order is the order in which the orthogonality condition c_j^t b_i = 0
    for i >= j is checked.
    """

    __slots__ = ("level", "triples")

    def __init__(self, level: str, triples):
        if level not in LEVELS:
            raise ValueError(f"unknown certificate level {level!r}")
        normalized = []
        nvars = None
        for c, d, b in triples:
            if not isinstance(c, LinearForm):
                raise TypeError("certificate forms must be LinearForm values")
            if not isinstance(d, int) or d < 1:
                raise ValueError("certificate powers must be integers >= 1")
            b = tuple(c.field.scalar(v) for v in b)
            if nvars is None:
                nvars = c.nvars
            if c.nvars != nvars or len(b) != nvars:
                raise ValueError("certificate triples disagree on dimension")
            normalized.append((c, d, b))
        self.level = level
        self.triples = tuple(normalized)

    @property
    def count(self) -> int:
        return len(self.triples)

    @property
    def nvars(self):
        return self.triples[0][0].nvars if self.triples else None

    @property
    def field(self):
        return self.triples[0][0].field if self.triples else None

    def with_level(self, level: str) -> "StarCertificate":
        return StarCertificate(level, self.triples)

    def __eq__(self, other):
        if not isinstance(other, StarCertificate):
            return NotImplemented
        return self.level == other.level and self.triples == other.triples

    def __repr__(self):
        return f"StarCertificate({self.level}, {self.count} triples)"


def _certificate_sum(cert: StarCertificate, field: Field, n: int) -> PolyMap:
    comps = [MultiPoly.zero(field, n) for _ in range(n)]
    for c, d, b in cert.triples:
        power = c.to_poly() ** d
        for i, coeff in enumerate(b):
            if not coeff.is_zero():
                comps[i] = comps[i] + power * coeff
    return PolyMap(comps)


def certificate_failure(map_: PolyMap, cert: StarCertificate, level: str | None = None):
    """The first violated clause as a diagnostic string, or None if valid.

    Clause order: sum mismatch, orthogonality (i,j), count, independence.
    Indices in diagnostics are 1-based.
    """
    if not map_.is_square:
        raise ValueError("certificates apply to square maps")
    n = map_.nvars
    field = map_.field
    if cert.triples and (cert.nvars != n or cert.field != field):
        raise ValueError("certificate dimension or field mismatch")
    level = level or cert.level
    if level not in LEVELS:
        raise ValueError(f"unknown certificate level {level!r}")
    if _certificate_sum(cert, field, n) != map_:
        return "sum mismatch"
    for i in range(cert.count):
        for j in range(i + 1):
            c_j = cert.triples[j][0]
            b_i = cert.triples[i][2]
            if not c_j.dot(b_i).is_zero():
                return f"orthogonality ({i + 1},{j + 1})"
    if level in ("doublestar", "triplestar") and cert.count != n - 1:
        return "count"
    if level == "triplestar":
        b_rows = [list(b) for _, _, b in cert.triples]
        if linalg.rank(b_rows) != n - 1:
            return "independence"
    return None


def verify_star_certificate(map_: PolyMap, cert: StarCertificate,
                            level: str | None = None) -> bool:
    return certificate_failure(map_, cert, level=level) is None


def conjugated_power_term(c: LinearForm, d: int, b, t_matrix: PolyMatrix) -> PolyMap:
    """The map T^{-1} (c^t T x)^d b, one certificate term after conjugation."""
    field = c.field
    n = c.nvars
    grid = t_matrix.constant_grid()
    inv = linalg.invert(grid, field)
    if inv is None:
        raise ValueError("conjugating matrix is singular")
    # coefficients of x -> c^t(Tx) are T^t c
    tc = [sum((grid[r][m] * c.coeffs[r] for r in range(n)), field.zero()) for m in range(n)]
    power = LinearForm(field, tc).to_poly() ** d
    tinv_b = [sum((inv[i][r] * b[r] for r in range(n)), field.zero()) for i in range(n)]
    return PolyMap([power * coeff if not coeff.is_zero() else MultiPoly.zero(field, n)
                    for coeff in tinv_b])


def triangularization_from_certificate(cert: StarCertificate, n: int,
                                        field: Field | None = None) -> PolyMatrix:
    """A constant invertible T that triangularizes every certificate term.

    Scanning the b_i from the last one backwards, keep those independent of
    the later kept ones; they become the last columns of T, completed to an
    invertible matrix by standard basis vectors.  Each term's conjugated
    Jacobian is then strictly lower triangular, which is re-checked.

    The field only needs to be passed for an empty certificate.
    """
    field = cert.field or field or Field([0, 1])
    if cert.triples and cert.nvars != n:
        raise ValueError("certificate dimension mismatch")
    for i in range(cert.count):
        for j in range(i + 1):
            if not cert.triples[j][0].dot(cert.triples[i][2]).is_zero():
                raise ValueError(f"orthogonality violated at ({i + 1},{j + 1})")
    kept = []
    span_rows = []
    for i in range(cert.count - 1, -1, -1):
        b = list(cert.triples[i][2])
        if linalg.rank(span_rows + [b]) > linalg.rank(span_rows):
            kept.append(i)
            span_rows.append(b)
    kept.reverse()
    tail_cols = [list(cert.triples[i][2]) for i in kept]
    # complete with unit vectors that keep the column rank growing
    cols = []
    basis_rows = [list(c) for c in tail_cols]
    for j in range(n):
        if len(cols) == n - len(tail_cols):
            break
        unit = [field.one() if i == j else field.zero() for i in range(n)]
        if linalg.rank(basis_rows + [unit]) > linalg.rank(basis_rows):
            cols.append(unit)
            basis_rows.append(unit)
    all_cols = cols + tail_cols
    if len(all_cols) != n:
        raise ArithmeticError("failed to complete the column basis")
    grid = [[all_cols[j][i] for j in range(n)] for i in range(n)]
    t_matrix = PolyMatrix.from_scalars(field, n, grid)
    for c, d, b in cert.triples:
        jac = jacobian(conjugated_power_term(c, d, b, t_matrix))
        if not jac.is_lower_triangular(strict=True):
            raise ArithmeticError("constructed matrix failed to triangularize a term")
    return t_matrix


def _pure_power_summands(poly: MultiPoly):
    """Split a polynomial into powers of linear forms, layer by layer.

    Each homogeneous part is taken whole when it is a single power of a
    linear form; otherwise its monomials must be powers of single variables.
    """
    out = []
    for degree, layer in poly.homogeneous_parts().items():
        if degree == 0:
            raise ValueError("nonzero constant part cannot be a power of a linear form")
        detected = is_pure_power(layer)
        if detected is not None:
            out.append(detected)
            continue
        for exps, coeff in layer.sorted_terms():
            support = [i for i, e in enumerate(exps) if e]
            if len(support) != 1:
                raise ValueError("component summand is not a power of a linear form")
            idx = support[0]
            out.append((LinearForm.unit(poly.field, poly.nvars, idx), exps[idx], coeff))
    return out


def certificate_from_triangularization(map_: PolyMap, t_matrix: PolyMatrix) -> StarCertificate:
    """Read a star certificate off a strict triangularization of H.

    With G = T^{-1} H(Tx) strictly triangular, every summand lam (g^t x)^d of
    a component G_{i+1} contributes the triple (T^{-t} g, d, lam T e_{i+1});
    ordering the triples by component index satisfies the orthogonality
    condition with the identity permutation.
    """
    if not map_.is_square:
        raise ValueError("triangularization applies to square maps")
    field, n = map_.field, map_.nvars
    conjugated = conjugate(map_, t_matrix)
    if not jacobian(conjugated).is_lower_triangular(strict=True):
        raise ValueError("conjugated Jacobian is not strictly lower triangular")
    grid = t_matrix.constant_grid()
    inv = linalg.invert(grid, field)
    triples = []
    for idx, comp in enumerate(conjugated.components):
        if comp.is_zero():
            continue
        col = [grid[r][idx] for r in range(n)]
        for gamma, d, lam in _pure_power_summands(comp):
            c_vec = [sum((inv[r][m] * gamma.coeffs[r] for r in range(n)), field.zero())
                     for m in range(n)]
            b_vec = [lam * v for v in col]
            triples.append((LinearForm(field, c_vec), d, b_vec))
    cert = StarCertificate("star", triples)
    failure = certificate_failure(map_, cert)
    if failure is not None:
        raise ArithmeticError(f"reconstructed certificate does not verify: {failure}")
    return cert


# -- desk-scale oracles for the stronger forms --------------------------------

def _single_term_certificate(map_: PolyMap):
    """In dimension 2 the n-1 = 1 term forms are decidable exhaustively.

    A single-term decomposition H = (c^t x)^d b is unique up to the
    normalization of c, so matching against the detected pure power and
    checking c^t b = 0 is a complete test.
    """
    field, n = map_.field, map_.nvars
    if map_.is_zero():
        return StarCertificate("doublestar",
                               [(LinearForm.zero_form(field, n), 1,
                                 [field.one()] + [field.zero()] * (n - 1))])
    base = None
    for comp in map_.components:
        if not comp.is_zero():
            base = comp
            break
    detected = is_pure_power(base)
    if detected is None:
        return None
    form, d, lam = detected
    lead = max(base.terms)
    ratios = []
    for comp in map_.components:
        if comp.is_zero():
            ratios.append(field.zero())
            continue
        # comp must be a constant multiple of base
        if comp.degree() != base.degree() or lead not in comp.terms:
            return None
        ratio = comp.terms[lead] / base.terms[lead]
        if comp != base * ratio:
            return None
        ratios.append(ratio)
    b = [lam * r for r in ratios]
    if not form.dot(b).is_zero():
        return None
    cert = StarCertificate("doublestar", [(form, d, b)])
    if certificate_failure(map_, cert) is not None:
        return None
    return cert


def _component_span(map_: PolyMap):
    """A basis of the linear span of the components, as polynomials."""
    monomials = sorted({e for comp in map_.components for e in comp.terms})
    rows = [[comp.terms.get(e, map_.field.zero()) for e in monomials]
            for comp in map_.components]
    reduced, pivots = linalg.rref(rows)
    basis = []
    for r in range(len(pivots)):
        terms = {}
        for e, v in zip(monomials, reduced[r]):
            if not v.is_zero():
                terms[e] = v
        basis.append(MultiPoly(map_.field, map_.nvars, terms))
    return basis


def _zero_map_certificate(map_: PolyMap, level: str) -> StarCertificate:
    field, n = map_.field, map_.nvars
    zero_form = LinearForm.zero_form(field, n)
    triples = []
    for i in range(n - 1):
        b = [field.one() if r == i + 1 else field.zero() for r in range(n)]
        triples.append((zero_form, 1, b))
    return StarCertificate(level, triples)


def _decide_doublestar_oracle(map_: PolyMap):
    """(verdict, witness, note) for the n-1 term form, or None when out of scope."""
    n = map_.nvars
    if map_.is_zero():
        cert = _zero_map_certificate(map_, "doublestar")
        return HOLDS, {"kind": "certificate", "certificate": cert}, "zero map"
    if n == 1:
        return FAILS, None, "a nonzero one-variable map is no empty sum"
    if n != 2:
        return None
    cert = _single_term_certificate(map_)
    if cert is None:
        return (FAILS, None,
                "single-term oracle: no orthogonal decomposition with one power exists")
    return HOLDS, {"kind": "certificate", "certificate": cert}, "single-term oracle"


def _decide_triplestar_oracle(map_: PolyMap):
    """(verdict, witness, note) for the independent-b form, or None."""
    n = map_.nvars
    if map_.is_zero():
        cert = _zero_map_certificate(map_, "triplestar")
        return HOLDS, {"kind": "certificate", "certificate": cert}, "zero map"
    if n == 1:
        return FAILS, None, "a nonzero one-variable map is no empty sum"
    if n == 2:
        cert = _single_term_certificate(map_)
        if cert is None:
            return (FAILS, None,
                    "single-term oracle: no orthogonal decomposition with one power exists")
        return HOLDS, {"kind": "certificate", "certificate": cert.with_level("triplestar")}, \
            "single-term oracle"
    basis = _component_span(map_)
    if len(basis) == 1:
        if is_pure_power(basis[0]) is None:
            return (FAILS, {"kind": "span_generator", "generator": basis[0]},
                    "component-span oracle: with independent b_i every form power lies in "
                    "the span, but its generator is not a power of a linear form")
    return None


# -- the aggregated chain ------------------------------------------------------

def _exhibit_inverse(map_: PolyMap, cert: StarCertificate | None):
    """Try to exhibit an inverse: quasi-translation, direct triangular
    inversion, or inversion after certificate-driven triangularization."""
    h = nonlinear_part(map_)
    if is_quasi_translation(map_):
        inverse = PolyMap.identity(map_.field, map_.nvars) - h
        return inverse, "quasi-translation: x - H inverts x + H"
    if jacobian(h).is_lower_triangular(strict=True):
        return invert_triangular(map_), "forward substitution on the triangular form"
    if cert is not None and verify_star_certificate(h, cert, level="star"):
        t_matrix = triangularization_from_certificate(cert, map_.nvars)
        conj = conjugate(map_, t_matrix)
        inv_conj = invert_triangular(conj)
        grid = t_matrix.constant_grid()
        inv_grid = linalg.invert(grid, map_.field)
        t_inv = PolyMatrix.from_scalars(map_.field, map_.nvars, inv_grid)
        inverse = conjugate(inv_conj, t_inv)
        return inverse, "inverted after certificate-driven triangularization"
    return None


def chain_report(map_: PolyMap, cert: StarCertificate | None = None,
                 checks=None) -> PropertyReport:
    """Run the condition chain on F = x + H and aggregate the verdicts.

    `checks` restricts the work to a subset of CHAIN_CONDITIONS.  The
    stronger forms hold only with a verifying certificate or through the
    desk-scale oracles, and the invertibility condition holds only when an
    inverse is actually exhibited; neither is ever decided negative beyond
    the sound oracles.
    """
    if not map_.is_square:
        raise ValueError("chain analysis needs a square map F = x + H")
    wanted = set(CHAIN_CONDITIONS if checks is None else checks)
    unknown = wanted.difference(CHAIN_CONDITIONS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    h = nonlinear_part(map_)
    n = map_.nvars
    report = PropertyReport()

    if "keller" in wanted:
        det = matrix_det(jacobian(map_))
        ok = det.is_constant() and not det.is_zero()
        report.record("keller", HOLDS if ok else FAILS,
                      witness=None if ok else {"kind": "symbolic_determinant",
                                               "determinant": det})
    if "nilpotent" in wanted:
        jac_h = jacobian(h)
        if matrix_is_nilpotent(jac_h):
            report.record("nilpotent", HOLDS)
        else:
            row, col, value = _first_nonzero_entry(jac_h.power(n))
            report.record("nilpotent", FAILS,
                          witness={"kind": "matrix_entry", "row": row, "col": col,
                                   "value": value},
                          note="JH^n has a nonzero entry")
    if "quasi" in wanted:
        if is_quasi_translation(map_):
            report.record("quasi", HOLDS)
        else:
            x_minus_h = PolyMap.identity(map_.field, n) - h
            diff = map_compose(h, x_minus_h) - h
            index = next(i for i, c in enumerate(diff.components) if not c.is_zero())
            report.record("quasi", FAILS,
                          witness={"kind": "component", "index": index,
                                   "value": diff.components[index]},
                          note="H(x - H) - H is nonzero")
    if "jc" in wanted:
        k = max(map_.degree() - 1, 1)
        report.merge(check_sum_condition(map_, k, label="jc"))
    if "jc_plus" in wanted:
        report.merge(check_sum_condition(map_, n, label="jc_plus"))
    need_strong = wanted.intersection({"strong_nilpotent", "star"})
    if need_strong:
        strong = is_strongly_nilpotent(h)
        verdict = strong.verdict("strong_nilpotent")
        if "strong_nilpotent" in wanted:
            report.record("strong_nilpotent", verdict,
                          witness=strong.witness("strong_nilpotent"),
                          note=strong.notes.get("strong_nilpotent"))
        if "star" in wanted:
            if cert is not None and verify_star_certificate(h, cert, level="star"):
                report.record("star", HOLDS,
                              witness={"kind": "certificate", "certificate": cert})
            elif h.vanishes_at_origin():
                report.record("star", verdict, witness=strong.witness("strong_nilpotent"))
            else:
                report.record("star", UNDECIDED,
                              note="H(0) != 0: only the triangularizability reading applies")
    if "jc_minus" in wanted:
        exhibited = _exhibit_inverse(map_, cert)
        if exhibited is not None:
            inverse, how = exhibited
            report.record("jc_minus", HOLDS,
                          witness={"kind": "inverse_map", "map": inverse}, note=how)
        else:
            report.record("jc_minus", UNDECIDED, note="no inverse exhibited")
    if "doublestar" in wanted:
        if cert is not None and verify_star_certificate(h, cert, level="doublestar"):
            report.record("doublestar", HOLDS,
                          witness={"kind": "certificate", "certificate": cert})
        else:
            decided = _decide_doublestar_oracle(h)
            if decided is None:
                report.record("doublestar", UNDECIDED,
                              note="no verifying certificate; outside the oracles")
            else:
                report.record("doublestar", decided[0], witness=decided[1], note=decided[2])
    if "triplestar" in wanted:
        if cert is not None and verify_star_certificate(h, cert, level="triplestar"):
            report.record("triplestar", HOLDS,
                          witness={"kind": "certificate", "certificate": cert})
        else:
            decided = _decide_triplestar_oracle(h)
            if decided is None:
                report.record("triplestar", UNDECIDED,
                              note="no verifying certificate; outside the oracles")
            else:
                report.record("triplestar", decided[0], witness=decided[1], note=decided[2])
    return report
