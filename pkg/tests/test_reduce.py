import itertools

import numpy as np
import pytest

from lqca.core import Configuration, LocalRule, RuleError, validate_rule
from lqca.oracle import enumerate_configs, random_configuration, random_rule
from lqca.reduce import (
    BlockEncoding,
    build_a_tensor,
    decode_configuration,
    encode_configuration,
    reduce_neighborhood,
    translate_neighborhood,
)
from lqca.simulate import apply_global

# rows y, columns x over 00, 01, 10, 11; None marks a null entry
PRINTED = [
    ["0", None, "0", None],
    ["1", None, "1", None],
    [None, "1", None, "1"],
    [None, "0", None, "0"],
]


def basis(sym):
    return np.array([1, 0]) if sym == "0" else np.array([0, 1])


def test_sample_a_tensor_printed_pattern(sample):
    a = build_a_tensor(sample)
    layout = a.printed_layout()
    assert layout.shape == (4, 4, 2)
    for row, col in itertools.product(range(4), repeat=2):
        want = PRINTED[row][col]
        got = layout[row, col]
        if want is None:
            assert not np.any(got)
        else:
            assert np.array_equal(got, basis(want))


def test_a_tensor_bra_ket_examples(sample):
    a = build_a_tensor(sample)
    # <00|A|01>: x = 01, y = 00 do not overlap
    assert not np.any(a.entry(("0", "1"), ("0", "0")))
    # <10|A|01> = delta|010> = |1>
    assert np.array_equal(a.entry(("0", "1"), ("1", "0")), basis("1"))


def test_a_tensor_overlap_count(sample, qflip):
    for rule in (sample, qflip):
        a = build_a_tensor(rule)
        assert a.overlap.sum() == rule.k ** rule.n


def test_a_tensor_two_cells_is_rule(qflip):
    a = build_a_tensor(qflip)
    assert np.array_equal(a.vectors.reshape(4, 2), qflip.amplitudes)
    assert a.overlap.all()


def test_a_tensor_needs_two_cells(qflip):
    with pytest.raises(RuleError):
        build_a_tensor(LocalRule(qflip.table, (0,), qflip.amplitudes[::2]))


def test_translate(sample):
    t = translate_neighborhood(sample, 3)
    assert t.neighborhood == (3, 4, 5)
    assert np.array_equal(t.amplitudes, sample.amplitudes)


def test_sample_reduction_shape(sample):
    red, enc = reduce_neighborhood(sample)
    assert red.neighborhood == (0, 1)
    assert red.k == 4
    assert red.quiescent == "0.0"
    assert enc.block_width == 2 and enc.shift == -1
    assert validate_rule(red).ok
    # (0.1, 1.0): x0 x1 y0 = 011 -> 0 and x1 y0 y1 = 110 -> 1
    img = red.image(("0.1", "1.0"))
    want = np.zeros(4)
    want[red.table.index("0.1")] = 1
    assert np.array_equal(img, want)


def test_reduction_n2_is_translation(qflip):
    red, enc = reduce_neighborhood(qflip)
    assert red == qflip and enc.block_width == 1 and enc.shift == 0


def test_reduction_n1_pads():
    from lqca.core import SymbolTable, make_rule

    t = SymbolTable(("p",), "q")
    r = make_rule(t, (2,), [(("q",), "q", 1), (("p",), "p", 1)])
    red, enc = reduce_neighborhood(r)
    assert red.n == 2 and enc.shift == 2
    c = Configuration({0: "p", 3: "p"})
    assert apply_global(red, c).terms == apply_global(r, c.shift(2)).terms


def test_block_round_trip(sample, rng):
    _, enc = reduce_neighborhood(sample)
    for _ in range(100):
        c = random_configuration(sample.table, (-5, 6), rng)
        e = encode_configuration(enc, c)
        assert decode_configuration(enc, e) == c


def test_split_token_rejects(sample):
    _, enc = reduce_neighborhood(sample)
    for bad in ("0", "0.1.1", "0.x", ""):
        with pytest.raises(RuleError):
            enc.split_token(bad)


def _check_reduction(rule, J_blocks):
    red, enc = reduce_neighborhood(rule)
    for b in enumerate_configs(J_blocks, red.table):
        red_img = apply_global(red, b)
        src = decode_configuration(enc, b)
        # source evolution with neighborhood starting at 0
        src_img = apply_global(translate_neighborhood(rule), src)
        decoded = {decode_configuration(enc, d): a for d, a in red_img.items()}
        assert set(decoded) == set(src_img.terms)
        for d, a in src_img.items():
            assert abs(decoded[d] - a) < 1e-12
        # the original evolution is the translated one moved by the shift
        orig = apply_global(rule, src)
        for d, a in src_img.items():
            assert abs(orig.amplitude(d.shift(-enc.shift)) - a) < 1e-12


def test_sample_reduction_correct(sample):
    _check_reduction(sample, (0, 3))


def test_random_n3_reduction_correct(rng):
    for _ in range(5):
        _check_reduction(random_rule(2, rng, n=3, mode="haar"), (0, 2))


def test_n4_reduction_correct(rng):
    _check_reduction(random_rule(2, rng, n=4, mode="structured"), (0, 1))


def test_joiner_in_symbol_rejected():
    from lqca.core import SymbolTable

    t = SymbolTable(("a.b",), "q")
    amps = np.zeros((8, 2))
    amps[:, 0] = 1
    with pytest.raises(RuleError):
        reduce_neighborhood(LocalRule(t, (0, 1, 2), amps))


def test_block_encoding_width_one():
    from lqca.core import SymbolTable

    t = SymbolTable(("p",), "q")
    enc = BlockEncoding(1, t, t, 0)
    assert enc.block_token(("p",)) == "p" and enc.split_token("p") == ("p",)
