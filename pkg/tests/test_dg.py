import pytest

from qplucker.dg import Differential, build_differential, check_differential, homology_dims
from qplucker.freealg import FreePoly, parse_gen, parse_word
from qplucker.presentations import InvalidParams


def test_images_n3():
    d = build_differential(3)
    assert d.images[parse_gen("r[1,3|2]")] == FreePoly.word(parse_word("r[1,2|3]*r[2,3|1]"))
    assert not d.images[parse_gen("r[1,2|3]")]
    assert not d.images[parse_gen("r[2,3|1]")]


def test_n3_checks_and_homology():
    assert check_differential(build_differential(3)).ok
    h = homology_dims(3)
    assert h.dims == [1, 3, 1] and h.homology == [1, 2]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_euler_identity(n):
    h = homology_dims(n)
    assert h.euler_algebra == h.euler_homology


def test_images_are_quadratic_and_normal():
    d = build_differential(4)
    for img in d.images.values():
        for w, _ in img:
            assert len(w) == 2
            assert d.reduce(FreePoly.word(w)) == FreePoly.word(w)


def test_leibniz_sign():
    d = build_differential(3)
    g, h = parse_gen("r[1,3|2]"), parse_gen("r[1,2|3]")
    # d(h g) = d(h) g - h d(g); both pieces vanish in degree 3
    assert not d.of_word((h, g))


def test_mutation_is_detected():
    d = build_differential(4)
    base = {(c, w) for c, w, _ in check_differential(d).failures}
    g = parse_gen("r[1,3|2]")
    images = dict(d.images)
    images[g] = -images[g]
    mutated = check_differential(Differential(4, images, d.system))
    new = {(c, w) for c, w, _ in mutated.failures} - base
    assert new


def test_matrices_shape():
    h = homology_dims(3, with_matrices=True)
    assert [len(m) for m in h.matrices] == h.dims[:-1]
    assert sorted(row[0] for row in h.matrices[1]) == ["0", "0", "1"]


def test_small_n_rejected():
    with pytest.raises(InvalidParams):
        build_differential(2)
