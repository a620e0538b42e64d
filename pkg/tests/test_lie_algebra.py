from fractions import Fraction

import pytest
import sympy

from nagata.exact import det, in_span, row_echelon
from nagata.lie_algebra import (BUILTIN_ALGEBRAS, InvalidAlgebraError, LieAlgebra,
                                REQUIRES_CATALOG, abelian, classify, derived_series,
                                filiform4, format_algebra, heis3, hirsch_length,
                                killing_form, load_algebra, lower_central_series,
                                parse_algebra, sl2, so3)

F = Fraction


def e(i, n):
    v = [F(0)] * n
    v[i] = F(1)
    return v


# --- independent oracles (sympy keeps them exact and unrelated to exact.py) --

def sympy_rank(rows):
    if not rows:
        return 0
    return sympy.Matrix([[sympy.Rational(x) for x in r] for r in rows]).rank()


def series_dims_oracle(L, kind):
    """Span closure computed with sympy row spaces only."""
    n = L.dim
    basis = [e(i, n) for i in range(n)]
    terms = [basis]
    dims = [n]
    while True:
        prev = terms[-1]
        left = basis if kind == "lower_central" else prev
        prods = [L.bracket(x, y) for x in left for y in prev]
        prods = [p for p in prods if any(c != 0 for c in p)]
        m = sympy.Matrix([[sympy.Rational(c) for c in p] for p in prods]) if prods else None
        r = m.rank() if m is not None else 0
        dims.append(r)
        if r == 0:
            break
        rowspace = [list(v) for v in m.rowspace()] if m is not None else []
        if r == dims[-2]:
            break
        terms.append([[F(sympy.nsimplify(x)) for x in row] for row in rowspace])
    return dims


def test_bracket_filiform_basis():
    L = filiform4()
    assert L.bracket(e(0, 4), e(1, 4)) == e(2, 4)
    assert L.bracket(e(0, 4), e(2, 4)) == e(3, 4)
    assert L.bracket(e(1, 4), e(0, 4)) == [F(0), F(0), F(-1), F(0)]


def test_bracket_self_is_zero():
    for alg in (heis3(), filiform4(), sl2()):
        x = [F(1, 3), F(-2), F(5, 7)] + ([F(2)] if alg.dim == 4 else [])
        assert all(c == 0 for c in alg.bracket(x, x))


def test_bracket_heis_e1_e3():
    L = heis3()
    assert all(c == 0 for c in L.bracket(e(0, 3), e(2, 3)))


def test_bracket_dimension_mismatch():
    with pytest.raises(ValueError):
        heis3().bracket([F(1)] * 2, [F(1)] * 3)


def test_bracket_bilinear():
    L = sl2()
    x, y, z = e(0, 3), e(1, 3), e(2, 3)
    lhs = L.bracket([a + 2 * b for a, b in zip(x, y)], z)
    rhs = [a + 2 * b for a, b in zip(L.bracket(x, z), L.bracket(y, z))]
    assert lhs == rhs


def test_lower_central_series_dims():
    assert lower_central_series(heis3()).dims[:3] == [3, 1, 0]
    assert lower_central_series(heis3()).degree == 2
    assert lower_central_series(filiform4()).dims[:4] == [4, 2, 1, 0]
    assert lower_central_series(filiform4()).degree == 3
    assert lower_central_series(abelian(2)).dims[:2] == [2, 0]


def test_series_match_sympy_oracle():
    for name, mk in BUILTIN_ALGEBRAS.items():
        L = mk()
        got = lower_central_series(L).dims
        want = series_dims_oracle(L, "lower_central")
        assert got[:len(want)] == want, name
        got = derived_series(L).dims
        want = series_dims_oracle(L, "derived")
        assert got[:len(want)] == want, name


def test_derived_series_dims():
    assert derived_series(heis3()).dims[:3] == [3, 1, 0]
    ders = derived_series(sl2())
    assert ders.dims[0] == 3 and ders.dims[-1] == 3  # stabilizes at full
    assert not ders.reaches_zero
    assert derived_series(abelian(5)).dims[:2] == [5, 0]


def test_series_containment():
    for mk in BUILTIN_ALGEBRAS.values():
        L = mk()
        for chain in (lower_central_series(L), derived_series(L)):
            for outer, inner in zip(chain.subspaces, chain.subspaces[1:]):
                assert all(in_span(outer, v) for v in inner)


def test_killing_sl2():
    B = killing_form(sl2())
    assert B[0][0] == 8
    assert B[1][2] == 4 and B[2][1] == 4
    assert det(B) == -128
    # independent oracle: sympy traces of composed ad matrices
    L = sl2()
    ads = [sympy.Matrix([[sympy.Rational(x) for x in row] for row in L.ad(i)])
           for i in range(3)]
    for i in range(3):
        for j in range(3):
            assert B[i][j] == F(sympy.trace(ads[i] * ads[j]))
    assert sympy.Matrix([[sympy.Rational(x) for x in r] for r in B]).det() == -128


def test_killing_zero_cases():
    for L in (abelian(4), heis3()):
        B = killing_form(L)
        assert all(x == 0 for row in B for x in row)


def test_killing_invariance():
    # B([x,y],z) + B(y,[x,z]) = 0 on all basis triples
    for mk in BUILTIN_ALGEBRAS.values():
        L = mk()
        B = killing_form(L)
        n = L.dim

        def b(u, v):
            return sum(B[i][j] * u[i] * v[j] for i in range(n) for j in range(n))

        for i in range(n):
            for j in range(n):
                for k in range(n):
                    x, y, z = e(i, n), e(j, n), e(k, n)
                    assert b(L.bracket(x, y), z) + b(y, L.bracket(x, z)) == 0


def test_classify_reports():
    rep = classify(filiform4())
    assert rep.topological_dim == 4 and rep.is_nilpotent
    assert rep.nilpotency_degree == 3 and rep.predicted_asdim_AN == 4

    rep = classify(sl2())
    assert rep.is_semisimple_by_killing and not rep.is_solvable
    assert rep.predicted_asdim_AN == REQUIRES_CATALOG

    rep = classify(abelian(6))
    assert rep.predicted_asdim_AN == 6 and rep.is_nilpotent and rep.is_solvable


def test_classify_flag_implications():
    for mk in BUILTIN_ALGEBRAS.values():
        rep = classify(mk())
        if rep.is_nilpotent:
            assert rep.is_solvable
        if rep.is_solvable and rep.lower_central_dims[1] > 0:
            assert not rep.is_semisimple_by_killing


def test_hirsch_length():
    assert hirsch_length([2, 1]) == 3
    assert hirsch_length([]) == 0
    assert hirsch_length([7]) == 7
    with pytest.raises(ValueError):
        hirsch_length([2, -1])


def test_jacobi_rejects_perturbations():
    # Perturbing a single entry only breaks Jacobi when the entry actually
    # feeds a nonzero triple (e.g. rescaling heis3's lone bracket stays a
    # Lie algebra), so each algebra gets an entry known to do damage.
    breaking = {"heis3": (0, 2, 0), "filiform4": (0, 1, 0),
                "sl2": (0, 1, 0), "so3": (0, 1, 0)}
    for name, (i, j, k) in breaking.items():
        L = BUILTIN_ALGEBRAS[name]()
        for delta in (F(1), F(-1, 3), F(7, 2)):
            c = [[[x for x in r] for r in p] for p in L.structure_constants]
            c[i][j][k] += delta
            c[j][i][k] -= delta
            with pytest.raises(InvalidAlgebraError):
                LieAlgebra(L.dim, tuple(tuple(tuple(r) for r in p) for p in c),
                           name).validate()


def test_antisymmetry_rejected():
    L = heis3()
    c = [[[x for x in r] for r in p] for p in L.structure_constants]
    c[0][1][2] = F(2)  # leave c[1][0][2] = -1
    with pytest.raises(InvalidAlgebraError):
        LieAlgebra(3, tuple(tuple(tuple(r) for r in p) for p in c)).validate()


def test_parse_and_format_roundtrip(tmp_path):
    text = "dim 4\n1 2 3 1\n1 3 4 1\n"
    L = parse_algebra(text, name="fil")
    assert lower_central_series(L).dims[:4] == [4, 2, 1, 0]
    assert parse_algebra(format_algebra(L)).structure_constants == L.structure_constants

    p = tmp_path / "heis.lie"
    p.write_text("dim 3\n# bracket table\n1 2 3 1/1\n")
    assert classify(load_algebra(p)).predicted_asdim_AN == 3


def test_parse_errors():
    with pytest.raises(InvalidAlgebraError):
        parse_algebra("1 2 3 1\n")          # no header
    with pytest.raises(InvalidAlgebraError):
        parse_algebra("dim 3\n2 1 3 1\n")   # needs i < j
    with pytest.raises(InvalidAlgebraError):
        parse_algebra("dim 3\n1 2 3\n")     # short record


def test_row_echelon_is_deterministic():
    rows = [[F(2), F(4)], [F(1), F(3)]]
    assert row_echelon(rows) == row_echelon([list(r) for r in rows])
    assert row_echelon(rows) == [[F(1), F(0)], [F(0), F(1)]]


def test_so3_is_semisimple():
    rep = classify(so3())
    assert rep.is_semisimple_by_killing
    assert rep.predicted_asdim_AN == REQUIRES_CATALOG
