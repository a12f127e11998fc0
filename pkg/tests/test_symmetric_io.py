import json
import os

from gmpy2 import mpq
from hypothesis import given

from cmherm import cache
from cmherm.cherednik import CouplingParams
from cmherm.core import MultiPoly, power_sum
from cmherm.io import atomic_write, latex_poly, poly_from_json, poly_to_json, table_to_csv, table_to_json, table_to_latex
from cmherm.quasinv import GradedBasis
from cmherm.reports import Report
from cmherm.symmetric import (
    dominates,
    monomial_symmetric,
    partitions,
    power_product,
    power_sum_decomposition,
    to_monomial_basis,
)

from strategies import polys

x1, x2 = MultiPoly.gens(2)


def test_partitions():
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert partitions(4, max_len=2) == [(4,), (3, 1), (2, 2)]
    assert partitions(0) == [()]


def test_dominance():
    assert dominates((3, 1), (2, 2))
    assert dominates((2, 2), (2, 1, 1))
    assert not dominates((2, 2), (3, 1))


def test_monomial_symmetric_and_back():
    m21 = monomial_symmetric((2, 1), 3)
    assert len(m21.terms) == 6
    assert to_monomial_basis(m21 + monomial_symmetric((3,), 3).scale(2)) == {(2, 1): 1, (3,): 2}


def test_power_sum_decomposition():
    p = power_sum(3, 2) * power_sum(3, 1) - power_sum(3, 3).scale(mpq(1, 2))
    dec = power_sum_decomposition(p)
    assert dec == {(2, 1): 1, (3,): mpq(-1, 2)}
    back = sum((power_product(mu, 3).scale(c) for mu, c in dec.items()), MultiPoly.zero(3))
    assert back == p


@given(polys(2))
def test_json_and_latex(p):
    assert poly_from_json(json.loads(json.dumps(poly_to_json(p)))) == p
    assert isinstance(latex_poly(p), str)


def test_latex_poly():
    assert latex_poly(x1 ** 2 - x2.scale(mpq(1, 2))) == r"x1^2 - \frac{1}{2}x2"
    assert latex_poly(MultiPoly.zero(2)) == "0"


def test_tables():
    rows = [("a", x1 + x2, ["x", "y"]), ("b", x1 * x2, ["x", "y"])]
    csv = table_to_csv(rows).splitlines()
    assert csv[0] == "label,x^1*y^1,x^1,y^1"
    assert csv[1] == "a,0,1,1"
    assert table_to_latex(rows) == "a = x + y,\nb = xy\n"
    obj = json.loads(table_to_json(rows, [{"k": 1}, None]))
    assert obj["entries"][0]["k"] == 1 and "k" not in obj["entries"][1]


def test_atomic_write(tmp_path):
    path = tmp_path / "sub" / "f.txt"
    atomic_write(str(path), "hello")
    assert path.read_text() == "hello"
    assert [f for f in os.listdir(path.parent)] == ["f.txt"]


def test_cache_env_and_warm(tmp_path, monkeypatch):
    monkeypatch.setenv(cache.ENV_VAR, str(tmp_path / "c"))
    assert cache.cache_root() == str(tmp_path / "c")
    written = cache.warm([(2, 1)], 3)
    assert written == [f"qbasis_N2_m1_d{d}.json" for d in range(4)]
    assert cache.status() == written
    loaded = cache.load(2, 1, 3)
    gb = GradedBasis.build(CouplingParams(2, 1), 3)
    assert loaded[0] == -2 and loaded[1].basis == gb.basis(3)
    assert cache.warm([(2, 1)], 3) == written
    assert cache.clear() == 4


def test_report():
    r = Report("t")
    r.add("ok", True, {"ignored": 1})
    r.add("bad", False, {"w": 2}, "anchor")
    assert not r.passed and [c.name for c in r.failures()] == ["bad"]
    obj = r.to_json_obj()
    assert obj["checks"][0] == {"name": "ok", "passed": True}
    assert obj["checks"][1]["witness"] == {"w": 2}
