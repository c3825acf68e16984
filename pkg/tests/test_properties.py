"""Chain condition checkers, certificates and triangularization."""

from fractions import Fraction

import pytest

from kellerlab.exactfield import QQ, Field
from kellerlab.multipoly import LinearForm, MultiPoly, lift_to_field, variables
from kellerlab.polymap import (PolyMap, PolyMatrix, conjugate, jacobian,
                               map_compose, matrix_det, matrix_is_nilpotent,
                               plus_identity)
from kellerlab.properties import (FAILS, HOLDS, UNDECIDED, StarCertificate,
                                  certificate_failure,
                                  certificate_from_triangularization,
                                  chain_report, check_sum_condition,
                                  conjugated_power_term, decide_star,
                                  is_keller, is_quasi_translation,
                                  is_strongly_nilpotent,
                                  strong_nilpotence_product,
                                  substituted_jacobian_sum,
                                  triangularization_from_certificate,
                                  verify_star_certificate, verify_sum_witness)
from kellerlab.constructions import FamilySpec, family_certificate, make_family


def _cube_map():
    x1, x2 = variables(QQ, 2)
    return plus_identity(PolyMap([MultiPoly.zero(QQ, 2), x1 ** 2]))


def test_is_keller_examples():
    assert is_keller(_cube_map())
    x1, x2 = variables(QQ, 2)
    assert not is_keller(PolyMap([x1 ** 2, x2]))
    f5 = plus_identity(make_family(FamilySpec("n5", 3)))
    assert matrix_det(jacobian(f5)) == MultiPoly.constant(QQ, 5, 1)
    assert is_keller(f5)


def test_quasi_translation_examples():
    assert is_quasi_translation(plus_identity(make_family(FamilySpec("n4", 3))))
    assert is_quasi_translation(_cube_map())
    x1, x2 = variables(QQ, 2)
    h = PolyMap([x2 ** 2, x1 ** 2])
    # independent oracle: expand H(x - H) - H and exhibit a nonzero term
    x_minus_h = PolyMap.identity(QQ, 2) - h
    diff = map_compose(h, x_minus_h) - h
    assert not diff.is_zero()
    assert not is_quasi_translation(plus_identity(h))


def test_sum_condition_keller_cube():
    rep = check_sum_condition(_cube_map(), 1)
    assert rep.sole_verdict == HOLDS


def test_sum_condition_family_failure_and_witness():
    f = plus_identity(make_family(FamilySpec("n4", 3)))
    rep = check_sum_condition(f, 2, label="jc")
    assert rep.verdict("jc") == FAILS
    witness = rep.witness("jc")
    assert witness["kind"] == "points"
    ext = witness["field"]
    assert ext.min_poly == (Fraction(4), Fraction(0), Fraction(1))
    c = ext.generator()
    assert witness["points"][0] == [ext.one(), ext.zero(), ext.zero(), ext.zero()]
    assert witness["points"][1] == [ext.one(), c, ext.zero(), ext.zero()]
    assert verify_sum_witness(f, ext, witness["points"])


def test_sum_condition_holds_for_five_points():
    f = plus_identity(make_family(FamilySpec("n5", 3)))
    rep = check_sum_condition(f, 5)
    assert rep.sole_verdict == HOLDS
    h = make_family(FamilySpec("n5", 3))
    assert matrix_is_nilpotent(substituted_jacobian_sum(h, 5))


def test_strongly_nilpotent_triangular():
    x1, x2 = variables(QQ, 2)
    h = PolyMap([MultiPoly.zero(QQ, 2), x1 ** 3 - x1 ** 2])
    assert is_strongly_nilpotent(h).sole_verdict == HOLDS


def test_strongly_nilpotent_family_failure():
    h = make_family(FamilySpec("n5", 2))
    rep = is_strongly_nilpotent(h)
    assert rep.sole_verdict == FAILS
    witness = rep.witness("strong_nilpotent")
    assert witness["kind"] == "substitution_product"
    assert witness["factors"] == ["x1=0", "x2=0"]
    xs = variables(QQ, 5)
    expected = [MultiPoly.zero(QQ, 5), MultiPoly.zero(QQ, 5),
                xs[0] * xs[1], -(xs[0] * xs[1]), MultiPoly.zero(QQ, 5)]
    assert witness["diagonal"] == expected


def test_strongly_nilpotent_rejects_non_nilpotent_jacobian():
    x1, x2 = variables(QQ, 2)
    h = PolyMap([x2 ** 2, x1 ** 2])
    rep = is_strongly_nilpotent(h)
    assert rep.sole_verdict == FAILS
    assert "not nilpotent" in rep.notes["strong_nilpotent"]


def test_decide_star_examples():
    assert decide_star(make_family(FamilySpec("f666", 2, n=6))).verdict("star") == HOLDS
    assert decide_star(make_family(FamilySpec("n5", 3))).verdict("star") == FAILS
    zero = PolyMap.zero(QQ, 2, 2)
    assert decide_star(zero).verdict("star") == HOLDS


def test_decide_star_nonzero_origin_reading():
    x1, x2 = variables(QQ, 2)
    h = PolyMap([MultiPoly.constant(QQ, 2, 1), x1 ** 2])
    rep = decide_star(h)
    assert rep.verdict("star") == UNDECIDED
    assert rep.verdict("triangularizable") == HOLDS


def _small2_cert(d=3):
    e1 = LinearForm.unit(QQ, 2, 0)
    return StarCertificate("star", [
        (e1, d, [QQ.zero(), QQ.one()]),
        (e1, d - 1, [QQ.zero(), QQ.scalar(-1)]),
    ])


def test_verify_certificate_small_example():
    h = make_family(FamilySpec("small2", 3))
    assert verify_star_certificate(h, _small2_cert())


def test_verify_certificate_doublestar_single_term_fails():
    h = make_family(FamilySpec("small2", 3))
    # any single triple must reproduce x1^3 - x1^2, which is not a pure power
    e1 = LinearForm.unit(QQ, 2, 0)
    cert = StarCertificate("doublestar", [(e1, 3, [QQ.zero(), QQ.one()])])
    assert certificate_failure(h, cert) == "sum mismatch"


def test_certificate_failure_clauses():
    h = make_family(FamilySpec("f666", 2, nu=1))
    cert = family_certificate(FamilySpec("f666", 2, nu=1))
    assert certificate_failure(h, cert) is None
    # perturb a b vector: sum breaks first
    c0, d0, b0 = cert.triples[0]
    bad = StarCertificate(cert.level,
                          [(c0, d0, [v + 1 for v in b0])] + list(cert.triples[1:]))
    assert certificate_failure(h, bad) == "sum mismatch"
    # orthogonality diagnostic on a self-paired triple
    x1, x2 = variables(QQ, 2)
    h2 = PolyMap([x1 ** 2, MultiPoly.zero(QQ, 2)])
    cert2 = StarCertificate("star", [(LinearForm.unit(QQ, 2, 0), 2,
                                      [QQ.one(), QQ.zero()])])
    assert certificate_failure(h2, cert2) == "orthogonality (1,1)"
    # count clause for doublestar
    h0 = PolyMap.zero(QQ, 3, 3)
    empty = StarCertificate("doublestar", [])
    assert certificate_failure(h0, empty) == "count"
    # independence clause for triplestar
    spec0 = FamilySpec("f666", 2, nu=0)
    h666 = make_family(spec0)
    cert666 = family_certificate(spec0).with_level("triplestar")
    assert certificate_failure(h666, cert666) == "independence"


def test_certificate_level_downgrade():
    spec = FamilySpec("f666", 2, nu=1)
    h = make_family(spec)
    cert = family_certificate(spec)
    assert cert.level == "triplestar"
    for level in ("star", "doublestar", "triplestar"):
        assert verify_star_certificate(h, cert, level=level)


def test_triangularization_trivial_cases():
    cert = StarCertificate("star", [(LinearForm.unit(QQ, 2, 0), 2,
                                     [QQ.zero(), QQ.one()])])
    t = triangularization_from_certificate(cert, 2)
    assert t == PolyMatrix.identity(QQ, 2, 2)
    zeros = StarCertificate("star", [(LinearForm.unit(QQ, 3, 0), 2, [0, 0, 0]),
                                     (LinearForm.unit(QQ, 3, 1), 3, [0, 0, 0])])
    assert triangularization_from_certificate(zeros, 3) == PolyMatrix.identity(QQ, 3, 3)


def test_triangularization_rejects_orthogonality_violation():
    cert = StarCertificate("star", [(LinearForm.unit(QQ, 2, 0), 2,
                                     [QQ.one(), QQ.zero()])])
    with pytest.raises(ValueError, match="orthogonality"):
        triangularization_from_certificate(cert, 2)


def test_triangularization_family_recheck():
    spec = FamilySpec("f666", 2, nu=1)
    cert = family_certificate(spec)
    t = triangularization_from_certificate(cert, 6)
    for c, d, b in cert.triples:
        term_jac = jacobian(conjugated_power_term(c, d, b, t))
        assert term_jac.is_lower_triangular(strict=True)
    # the triangularized sum is then strictly triangular as well
    h = make_family(spec)
    assert jacobian(conjugate(h, t)).is_lower_triangular(strict=True)


def test_certificate_from_triangularization_round_trip():
    h = make_family(FamilySpec("f666", 2, nu=1))
    eye = PolyMatrix.identity(QQ, 6, 6)
    cert = certificate_from_triangularization(h, eye)
    assert cert.level == "star"
    assert verify_star_certificate(h, cert)
    assert decide_star(h).verdict("star") == HOLDS


def test_certificate_from_triangularization_nontrivial_matrix():
    x1, x2 = variables(QQ, 2)
    h = PolyMap([x2 ** 2, MultiPoly.zero(QQ, 2)])
    swap = PolyMatrix.from_scalars(QQ, 2, [[0, 1], [1, 0]])
    cert = certificate_from_triangularization(h, swap)
    assert verify_star_certificate(h, cert)
    (c, d, b), = cert.triples
    assert [v.as_rational() for v in c.coeffs] == [0, 1]
    assert d == 2
    assert [v.as_rational() for v in b] == [1, 0]


def test_certificate_from_triangularization_zero_map():
    cert = certificate_from_triangularization(PolyMap.zero(QQ, 3, 3),
                                              PolyMatrix.identity(QQ, 3, 3))
    assert cert.count == 0
    assert verify_star_certificate(PolyMap.zero(QQ, 3, 3), cert)


def test_certificate_from_triangularization_precondition_error():
    x1, x2 = variables(QQ, 2)
    h = PolyMap([MultiPoly.zero(QQ, 2), x1 ** 2 + x2 ** 2])
    with pytest.raises(ValueError, match="strictly lower triangular"):
        certificate_from_triangularization(h, PolyMatrix.identity(QQ, 2, 2))


def test_nilpotent_sum_device_for_certificates():
    # a verified certificate with N triples forces S^{N+1} = 0 and
    # det(n I + S) = n^n over fresh points
    spec = FamilySpec("f667", 2, nu=0)
    h = make_family(spec)
    cert = family_certificate(spec)
    assert verify_star_certificate(h, cert)
    n = h.nvars
    s = substituted_jacobian_sum(h, n)
    assert s.power(cert.count + 1).is_zero()
    n_eye = PolyMatrix.identity(h.field, s.nvars, n).scale(n)
    assert matrix_det(n_eye + s) == MultiPoly.constant(h.field, s.nvars, n ** n)


def test_strong_nilpotence_product_shape():
    h = make_family(FamilySpec("n5", 2))
    product = strong_nilpotence_product(h, 2)
    assert product.rows == 5 and product.nvars == 5 + 10


def test_chain_report_quasi_family():
    f = plus_identity(make_family(FamilySpec("n4", 3)))
    rep = chain_report(f)
    assert rep.verdict("jc_minus") == HOLDS
    assert rep.verdict("quasi") == HOLDS
    assert rep.verdict("jc") == FAILS
    assert rep.verdict("jc_plus") == FAILS
    assert rep.verdict("keller") == HOLDS
    assert rep.verdict("nilpotent") == HOLDS


def test_chain_report_jc_plus_star_gap():
    f = plus_identity(make_family(FamilySpec("n5", 2)))
    rep = chain_report(f, checks=["jc_plus", "star"])
    assert rep.verdict("jc_plus") == HOLDS
    assert rep.verdict("star") == FAILS


def test_chain_report_small3_span_oracle():
    spec = FamilySpec("small3", 3)
    h = make_family(spec)
    cert = family_certificate(spec)
    rep = chain_report(plus_identity(h), cert=cert)
    assert rep.verdict("doublestar") == HOLDS
    assert rep.verdict("triplestar") == FAILS
    assert "span" in rep.notes["triplestar"]


def test_chain_report_small2_single_term_oracle():
    spec = FamilySpec("small2", 3)
    h = make_family(spec)
    cert = family_certificate(spec)
    rep = chain_report(plus_identity(h), cert=cert)
    assert rep.verdict("star") == HOLDS
    assert rep.verdict("doublestar") == FAILS
    assert rep.verdict("triplestar") == FAILS
    assert rep.verdict("jc_minus") == HOLDS


def test_chain_report_zero_map_everything_holds():
    f = PolyMap.identity(QQ, 3)
    rep = chain_report(f)
    for name in ("keller", "nilpotent", "quasi", "jc_minus", "jc", "jc_plus",
                 "star", "doublestar", "triplestar", "strong_nilpotent"):
        assert rep.verdict(name) == HOLDS, name


def test_chain_report_certificate_drives_inverse():
    spec = FamilySpec("f667", 3, nu=1)
    h = make_family(spec)
    cert = family_certificate(spec)
    rep = chain_report(plus_identity(h), cert=cert, checks=["jc_minus", "star"])
    assert rep.verdict("jc_minus") == HOLDS
    assert rep.verdict("star") == HOLDS
    inverse = rep.witness("jc_minus")["map"]
    assert map_compose(plus_identity(h), inverse) == PolyMap.identity(h.field, h.nvars)


def test_chain_report_undecided_without_certificate():
    # a triangularizable but not obviously decomposable instance stays undecided
    x1, x2, x3 = variables(QQ, 3)
    h = PolyMap([MultiPoly.zero(QQ, 3), x1 ** 2, x1 * x2])
    rep = chain_report(plus_identity(h), checks=["doublestar", "triplestar"])
    assert rep.verdict("doublestar") == UNDECIDED
    assert rep.verdict("triplestar") == UNDECIDED


def test_chain_directions_on_families():
    # certificate at a stronger level verifies at every weaker level, and a
    # verified star certificate comes with holding sum conditions
    for spec in (FamilySpec("f666", 2, nu=1), FamilySpec("f666", 3, nu=0),
                 FamilySpec("f667", 2, nu=0), FamilySpec("f667", 3, nu=1)):
        h = make_family(spec)
        cert = family_certificate(spec)
        level_order = {"star": 0, "doublestar": 1, "triplestar": 2}
        for level, idx in level_order.items():
            if idx <= level_order[cert.level]:
                assert verify_star_certificate(h, cert, level=level), (spec, level)
        f = plus_identity(h)
        assert check_sum_condition(f, h.nvars).sole_verdict == HOLDS
        assert check_sum_condition(f, max(f.degree() - 1, 1)).sole_verdict == HOLDS


def test_jc_failure_implies_jc_plus_failure():
    f = plus_identity(make_family(FamilySpec("n4", 3)))
    jc = check_sum_condition(f, 2)
    jc_plus = check_sum_condition(f, 4)
    assert jc.sole_verdict == FAILS
    assert jc_plus.sole_verdict == FAILS


def test_chain_coherence_fuzz():
    # implications between the computed verdicts must match the theory:
    # star holds => jc_plus holds => jc holds, and jc fails => jc_plus fails;
    # exercised on random conjugates of triangular maps and on generic maps
    import random
    from kellerlab.polymap import conjugate

    rng = random.Random(777213)
    for trial in range(18):
        n = rng.randint(2, 3)
        comps = []
        for i in range(n):
            items = []
            for _ in range(rng.randint(0, 2)):
                exps = [0] * n
                upper = i if rng.random() < 0.7 else n
                for j in range(upper):
                    exps[j] = rng.randint(0, 2)
                items.append((tuple(exps), rng.randint(-3, 3)))
            poly = MultiPoly.from_terms(QQ, n, items)
            comps.append(poly - poly.constant_term())
        h = PolyMap(comps)
        # conjugate by a unipotent transvection: invertible, keeps the
        # symbolic determinants small enough for a fuzz loop
        row, col = rng.sample(range(n), 2)
        grid = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        grid[row][col] = rng.choice([-1, 1, 2])
        t = PolyMatrix.from_scalars(QQ, n, grid)
        h = conjugate(h, t)
        rep = chain_report(plus_identity(h), checks=["jc", "jc_plus", "star"])
        star, jc_plus, jc = (rep.verdict(k) for k in ("star", "jc_plus", "jc"))
        if star == HOLDS:
            assert jc_plus == HOLDS, (trial, h)
        if jc_plus == HOLDS:
            assert jc == HOLDS, (trial, h)
        if jc == FAILS:
            assert jc_plus == FAILS, (trial, h)


def test_sum_condition_symbolic_witness_over_extension():
    # witness-point search is limited to the rational base field, so a map
    # lifted into an extension reports the symbolic determinant instead
    ext = Field([1, 0, 1])
    h = make_family(FamilySpec("n4", 3))
    lifted = PolyMap([lift_to_field(c, ext) for c in h.components])
    rep = check_sum_condition(plus_identity(lifted), 2)
    assert rep.sole_verdict == FAILS
    witness = rep.witness("sum_condition")
    assert witness["kind"] == "symbolic_determinant"
    det = witness["determinant"]
    assert not det.is_constant()


def test_sum_condition_identically_zero_determinant():
    x1, x2 = variables(QQ, 2)
    degenerate = PolyMap([x1, x1])
    rep = check_sum_condition(degenerate, 1)
    assert rep.sole_verdict == FAILS
    witness = rep.witness("sum_condition")
    assert witness["kind"] == "points"
    assert witness["points"] == [[QQ.zero(), QQ.zero()]]
    assert verify_sum_witness(degenerate, QQ, witness["points"])


def test_chain_report_failure_witnesses_reverify():
    x1, x2 = variables(QQ, 2)
    h = PolyMap([x2 ** 2, x1 ** 2])
    rep = chain_report(plus_identity(h), checks=["nilpotent", "quasi"])
    assert rep.verdict("nilpotent") == FAILS
    entry = rep.witness("nilpotent")
    power = jacobian(h) @ jacobian(h)
    assert power.entries[entry["row"]][entry["col"]] == entry["value"]
    assert not entry["value"].is_zero()
    assert rep.verdict("quasi") == FAILS
    comp = rep.witness("quasi")
    x_minus_h = PolyMap.identity(QQ, 2) - h
    diff = map_compose(h, x_minus_h) - h
    assert diff.components[comp["index"]] == comp["value"]
    assert not comp["value"].is_zero()
