import json

import pytest

from nslen.core import groupfile
from nslen.core.constructions import (
    STANDARD_CORPUS,
    alternating,
    build,
    direct_product,
    psl2,
    standard_corpus,
    symmetric,
)
from nslen.errors import MalformedFile, UnsupportedConstruction
from nslen.perm import Permutation


def test_wreath_product_of_a5_by_c5(a5wrc5):
    assert a5wrc5.degree == 25
    assert a5wrc5.order() == 60 ** 5 * 5
    assert a5wrc5.metadata.kind == "wreath"
    assert a5wrc5.metadata.sylow_recipe == "wreath"
    assert len(a5wrc5.metadata.blocks) == 5


def test_direct_and_small_wreath_products(s4xa5, c5wrc5):
    assert s4xa5.degree == 9
    assert s4xa5.order() == 1440
    assert [G.order_int for G in s4xa5.metadata.components()] == [24, 60]
    assert c5wrc5.order() == 5 ** 6


def test_named_families():
    assert build("dihedral(4)").order() == 8
    assert build("cyclic(7)").order() == 7
    assert build("trivial(3)").is_trivial()
    assert build("psl2(11)").order() == 660


@pytest.mark.parametrize("expression", ["foo(3)", "symmetric(0)", "wreath(cyclic(2))", "cyclic(5"])
def test_unsupported_expressions(expression):
    with pytest.raises(UnsupportedConstruction):
        build(expression)


def test_psl2_needs_an_odd_prime():
    with pytest.raises(UnsupportedConstruction):
        psl2(4)
    with pytest.raises(UnsupportedConstruction):
        psl2(2)


def test_standard_corpus_names():
    groups = standard_corpus()
    assert [G.name for G in groups] == [name for name, _ in STANDARD_CORPUS]
    assert "A5wrC5" in {G.name for G in groups}


def test_dumps_matches_the_fixture_bytes(fixtures_dir):
    assert groupfile.dumps(build("alternating(5)")) == (fixtures_dir / "a5.json").read_text()
    assert groupfile.dumps(build("symmetric(4)")) == (fixtures_dir / "s4.json").read_text()


def test_saved_group_loads_with_order_and_metadata(tmp_path, s4xa5):
    path = groupfile.save(s4xa5, tmp_path / "g.json")
    G = groupfile.load(path)
    assert G.order() == 1440
    assert G.metadata == s4xa5.metadata
    assert groupfile.dumps(G) == path.read_text()


def test_bad_generator_reports_the_field(fixtures_dir):
    with pytest.raises(MalformedFile) as exc:
        groupfile.load(fixtures_dir / "bad_generator.json")
    assert exc.value.field == "generators[0]"


def test_malformed_documents():
    with pytest.raises(MalformedFile) as exc:
        groupfile.loads('{"name": "x",\n "degree": }', path="x.json")
    assert exc.value.line == 2
    with pytest.raises(MalformedFile) as exc:
        groupfile.loads(json.dumps({"name": "x", "degree": 3}))
    assert exc.value.field == "generators"
    with pytest.raises(MalformedFile):
        groupfile.loads(json.dumps({"name": "x", "degree": 3, "generators": [], "order": 6}))


def test_metadata_blocks_must_partition_the_points():
    record = groupfile.group_to_record(build("symmetric(3)"))
    record["metadata"]["blocks"] = [[0, 1]]
    with pytest.raises(MalformedFile):
        groupfile.record_to_group(record)


def test_missing_file():
    with pytest.raises(MalformedFile):
        groupfile.load("/nonexistent/group.json")


def test_direct_product_projects_onto_its_factors():
    A, B = symmetric(4), alternating(5)
    G = direct_product(A, B)
    assert G.order() == A.order_int * B.order_int
    for seed in range(20):
        g = G.random_element(seed)
        left = Permutation(g.images[:A.degree])
        right = Permutation([i - A.degree for i in g.images[A.degree:]])
        assert A.contains(left)
        assert B.contains(right)
        assert left.extended(G.degree, 0) * right.extended(G.degree, A.degree) == g
