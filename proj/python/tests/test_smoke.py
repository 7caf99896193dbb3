import pytest

import selfsim

TERNARY = """p = 3
H = 1,1,1,1
alpha = 1,1,0,0; 0,1,0,0; 0,0,1,0; 0,0,0,1
"""


def test_worked_example():
    r = selfsim.verify_ternary_example()
    assert r["holds"]
    assert r["recursion"].splitlines()[2] == "c = (1,d,d^2)"


def test_group_and_phi():
    g = selfsim.Group.from_spec(TERNARY)
    assert g.order == 243
    assert g.element_order(g.a) == 3
    phi = selfsim.VirtualEndo.parse(g, "b -> d\nc -> 1\nd -> e\ne -> a\n")
    assert phi(g.element("c")) == 0
    assert phi.kernel().order == 3
    assert phi.core().is_trivial()
    assert phi.is_simple()
    assert phi.stable_kernel().is_trivial()
    assert phi.recursion().startswith("a = (012)(1,1,1)")


def test_construct_phi():
    g = selfsim.Group.ternary_example()
    jc = selfsim.construct_phi(g)
    assert jc["blocks"] == [2, 1, 1]
    assert jc["verified"]
    assert jc["phi"].to_text() == "b -> d\nc -> 1\nd -> e\ne -> a\n"


def test_search_nonsplit():
    g = selfsim.Group.from_spec("p = 2\nH = 2\nh0 = 1\n")
    assert not g.is_split()
    r = selfsim.find_simple(g.distinguished_subgroup(), count=True)
    assert r["first"] is None
    assert r["simple_count"] == 0


def test_dihedral_and_kpn():
    assert selfsim.verify_dihedral([3, 4]) == [0, 0]
    assert [selfsim.kpn_order(2, n) for n in (1, 2, 3)] == [2, 8, 128]
    assert selfsim.kpn_order(3, 2) == 81


def test_small_sweep():
    records = selfsim.verify_theorem([2], 4)
    assert records and all(line.startswith("case: p=2") for line in records)


def test_parse_error():
    with pytest.raises(ValueError):
        selfsim.Group.from_spec("p = 3\nq = 1\n")
