import random

import pytest

from freeaut.automorphisms import Relabeling, SecondKind, enumerate_automorphisms
from freeaut.onerelator import (
    DisjointSet,
    classify_relator,
    count_relator_classes,
    cyclic_words,
    isomorphic_generic,
)
from freeaut.sampling import SamplerConfig, sample_cyclically_reduced
from freeaut.words import canonical_rotation, count_words, inverse, rotate

from oracles import class_key, closure, to_ints

SEED = 20261015


def generic_word(k, n, seed=SEED, start=0):
    for i in range(start, start + 1000):
        w = sample_cyclically_reduced(SamplerConfig(k, n, seed, i))
        if classify_relator(w, k).rigidity_status == "generic_conditional":
            return w
    raise AssertionError("no generic relator found")


def test_classify_examples():
    r = classify_relator("a", 2)
    assert r.rigidity_status == "non_generic" and r.flags["primitive"]
    r = classify_relator("aa", 2)
    assert r.rigidity_status == "non_generic" and r.flags["proper_power"] and not r.flags["SM"]
    r = classify_relator("baaB", 2)
    assert r.core == "aa"
    with pytest.raises(ValueError):
        classify_relator("aA", 2)


def test_classify_json():
    js = classify_relator("a", 2).to_json()
    assert js["conditional_on_Pk"] is False
    js = classify_relator(generic_word(2, 60), 2).to_json()
    assert js["conditional_on_Pk"] is True and "P_k" in js["note"]


def test_generic_majority_at_500():
    ws = [sample_cyclically_reduced(SamplerConfig(2, 500, SEED, i)) for i in range(40)]
    reports = [classify_relator(w, 2) for w in ws]
    assert sum(r.rigidity_status == "generic_conditional" for r in reports) > 20
    for r in reports:
        if r.rigidity_status == "generic_conditional":
            assert r.flags["Z"] and r.flags["TS"] and r.flags["SM"]


def _reconstructs(d, u):
    image = rotate(d.relabeling.apply(u), d.offset)
    return image == (inverse(d.target) if d.inverted else d.target)


def test_planted_pairs():
    rng = random.Random(1)
    relabelings = enumerate_automorphisms(2, "relabelings")
    for j in range(30):
        u = generic_word(2, 100, start=j * 50)
        tau = rng.choice(relabelings)
        inverted = rng.random() < 0.5
        v = tau.apply(inverse(u) if inverted else u)
        v = rotate(v, rng.randrange(len(v)))
        d = isomorphic_generic(u, v, 2)
        assert d.verdict == "isomorphic" and _reconstructs(d, u)
        assert d.inverted == inverted
        assert d.relabeling == tau or tau in _symmetries(u)


def _symmetries(u):
    return [t for t in enumerate_automorphisms(2, "relabelings") if canonical_rotation(t.apply(u)) == canonical_rotation(u)]


def test_symmetric_on_planted_pairs():
    u = generic_word(2, 80)
    v = rotate(Relabeling(("B", "a")).apply(u), 13)
    assert isomorphic_generic(u, v, 2).verdict == isomorphic_generic(v, u, 2).verdict == "isomorphic"


def test_non_isomorphic_lengths():
    u = generic_word(2, 60)
    d = isomorphic_generic(u, "aab", 2)
    assert d.verdict == "not_isomorphic"
    js = d.to_json()
    assert js["conditional_on_Pk"] is True


def test_same_length_different_relator():
    u = generic_word(2, 60)
    w = generic_word(2, 60, start=500)
    assert isomorphic_generic(u, w, 2).verdict == "not_isomorphic"


def test_minimizes_v_first():
    u = generic_word(2, 60)
    # a non-inner Whitehead move after a relabeling lengthens the relator
    v = SecondKind.from_set("ab", "b", 2).apply(Relabeling(("b", "A")).apply(u))
    assert len(v) > len(u)
    d = isomorphic_generic(u, v, 2)
    assert d.verdict == "isomorphic" and _reconstructs(d, u)


def test_undecided_for_non_generic():
    d = isomorphic_generic("abAB", "baBA", 2)
    assert d.verdict == "undecided"
    assert d.to_json()["conditional_on_Pk"] is False
    with pytest.raises(ValueError):
        isomorphic_generic("a", "", 2)


def test_disjoint_set():
    ds = DisjointSet("abcd")
    assert ds.union("a", "b") and not ds.union("b", "a")
    ds.union("c", "d")
    assert ds.find("b") == "a" and ds.find("d") == "c"


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2)])
def test_class_count_examples(n, count):
    res = count_relator_classes(n, 2)
    assert res.count == count and res.exact
    assert res.count <= count_words(n, 2, "cyclic")
    assert "isomorphism-type count only for generic" in res.to_json()["semantics"]


def test_class_partition_matches_oracle():
    for n in (1, 2, 3):
        res = count_relator_classes(n, 2)
        assert res.exact
        for cls in res.classes:
            for w in cls:
                assert len(w) == n
        # the oracle: u ~ v iff v or v^-1 lies in the length-capped closure of u
        keys = {w: class_key(to_ints(w)) for cls in res.classes for w in cls}
        reach = {w: closure(to_ints(w), 2, n) for w in keys}
        for cls_a in res.classes:
            for cls_b in res.classes:
                u, v = cls_a[0], cls_b[0]
                linked = keys[v] in reach[u] or class_key(to_ints(inverse(v))) in reach[u]
                assert linked == (cls_a is cls_b), (u, v)
        assert sum(map(len, res.classes)) == len({canonical_rotation(w) for w in cyclic_words(n, 2)})


def test_class_count_order_independent():
    words = cyclic_words(3, 2)
    a = count_relator_classes(3, 2)
    b = count_relator_classes(3, 2, words=list(reversed(words)))
    assert a.count == b.count and a.classes == b.classes


def test_class_count_budget_marks_inexact():
    res = count_relator_classes(4, 2, budget=1)
    assert not res.exact
    with pytest.raises(ValueError):
        count_relator_classes(0, 2)
