import json
import random

import pytest

from lpa.graph import INFINITE_EMITTER, SINK
from lpa.hss import _breaking, enumerate_hss
from lpa.posets import (
    FinPoset,
    PosetError,
    check_properties,
    glb,
    kaplansky_pair,
    load_poset,
    posets_up_to_iso,
    r_set,
    realization_map,
    realize,
    verify_realization,
)
from lpa.spectrum import compute_spec
import oracles


def chain(n):
    names = [f"c{i}" for i in range(n)]
    return FinPoset(tuple(names), frozenset(zip(names, names[1:])))


V = FinPoset(("a", "b", "c"), frozenset({("a", "c"), ("b", "c")}))
DIAMOND = FinPoset(("bot", "a", "b", "top"),
                   frozenset({("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")}))
ANTICHAIN3 = FinPoset(("a", "b", "c"))


def test_transitive_closure_and_cycles():
    assert chain(4).less("c0", "c3")
    with pytest.raises(PosetError, match="cycle"):
        FinPoset(("a", "b"), frozenset({("a", "b"), ("b", "a")}))
    with pytest.raises(PosetError, match="unknown"):
        FinPoset(("a",), frozenset({("a", "z")}))
    with pytest.raises(PosetError):
        load_poset('{"elements": ["a", "a"]}')
    with pytest.raises(PosetError, match="line 1"):
        load_poset('{"elements": ')


def test_document_round_trip():
    for p in (DIAMOND, V, chain(5)):
        assert load_poset(json.dumps(p.to_document())) == p


def test_glb_examples():
    assert glb(chain(3), {"c2", "c1"}) == "c1"
    assert glb(V, {"a", "b"}) is None
    assert glb(DIAMOND, {"a", "b"}) == "bot"
    with pytest.raises(PosetError):
        glb(V, set())


def test_r_set_is_everything_for_finite_posets():
    for p in (chain(4), DIAMOND, ANTICHAIN3):
        assert r_set(p) == list(p.elements)


def test_properties_examples():
    for p in (chain(4), DIAMOND, ANTICHAIN3, V):
        r = check_properties(p)
        assert (r.GLB, r.DC, r.DD, r.KAP) == (True, True, True, True) and r.witnesses == {}
    assert kaplansky_pair(chain(2), "c0", "c1") == ("c0", "c1")
    assert kaplansky_pair(chain(4), "c0", "c3") == ("c0", "c1")
    with pytest.raises(PosetError):
        kaplansky_pair(V, "a", "b")


def test_bound_is_enforced():
    with pytest.raises(PosetError, match="bound"):
        check_properties(chain(13))


def test_realize_examples():
    g = realize(FinPoset(("p",)))
    assert g.vertices == ("p",) and g.mult == {}
    g = realize(FinPoset(("p", "q"), frozenset({("p", "q")})))
    assert g.mult == {("q", "p"): float("inf")}
    assert realize(FinPoset(("a", "b"))).mult == {}


def test_poset_counts():
    assert [len(posets_up_to_iso(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]


def test_verify_realization_examples():
    for p in posets_up_to_iso(3):
        assert verify_realization(p)
    assert verify_realization(chain(5))
    assert verify_realization(DIAMOND)
    image = realization_map(DIAMOND)
    assert image["top"] == (frozenset({"bot", "a", "b"}), frozenset())
    assert image["bot"] == (frozenset(), frozenset())


def _downsets(p):
    return {s for s in oracles.subsets(p.elements) if all(p.down(x) <= s for x in s)}


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_realization_structure(n):
    for p in posets_up_to_iso(n):
        g = realize(p)
        for x in p.elements:
            minimal = not any(p.less(y, x) for y in p.elements)
            assert g.vertex_class(x) == (SINK if minimal else INFINITE_EMITTER)
        hss = set(enumerate_hss(g))
        assert hss == _downsets(p)
        assert all(not _breaking(g, h) for h in hss)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_realization_against_isomorphism_search(n):
    for p in posets_up_to_iso(n):
        spec = compute_spec(realize(p))
        assert oracles.order_isomorphic(list(p.elements), p.leq, list(spec.nodes), spec.leq)


def random_poset(rng, n, density):
    names = [f"e{i}" for i in range(n)]
    lt = {(names[i], names[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < density}
    return FinPoset(tuple(names), frozenset(lt))


def test_kaplansky_pairs_on_random_posets():
    rng = random.Random(21)
    for _ in range(100):
        p = random_poset(rng, rng.randint(2, 8), rng.random())
        for a, b in p.lt:
            lo, hi = kaplansky_pair(p, a, b)
            assert p.leq(a, lo) and p.less(lo, hi) and p.leq(hi, b)
            assert (lo, hi) in p.covers()
            assert oracles.has_cover_between(p, a, b)
