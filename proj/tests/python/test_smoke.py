import math

import pytest

import _schrolab as sl


def test_symbols():
    assert sl.symbol_value(sl.SymbolKind.elliptic(), [3.0, -2.0]) == pytest.approx(13.0)
    assert sl.symbol_value(sl.SymbolKind.hyperbolic2d(), [3.0, -2.0]) == pytest.approx(-6.0)
    assert sl.symbol_value(sl.SymbolKind.saddle3d(-1), [3.0, -2.0, 1.0]) == pytest.approx(-7.0)


def test_field_roundtrip_and_norms():
    f = sl.interval_indicator(-1.0, 1.0, 128)
    assert len(f) == 128
    assert sl.l2_norm(f) == pytest.approx(math.sqrt(2.0))
    back = sl.field_from_json(sl.field_to_json(f))
    assert len(back) == len(f)

    ft = sl.propagate(f, 0.3, sl.SymbolKind.elliptic())
    assert sl.l2_norm(ft) == pytest.approx(sl.l2_norm(f))
    v = sl.evaluate(f, [0.0], 0.0, sl.SymbolKind.elliptic())
    assert v.real == pytest.approx(2.0, rel=1e-3)


def test_sequences():
    seq = sl.build_power_sequence(0.5, 100)
    rep = sl.weak_lr_quasinorm(seq, 0.5)
    assert rep.quasinorm < 1.0
    built = sl.build_block_sequence(r=0.5, N=2, R1=4.0, blocks=4)
    assert sl.dyadic_count_bound(built.sequence, 0.5) <= 1.0 + 1e-12
    assert len(built.blocks) == 4


def test_focusing_desk_scale():
    spec = sl.FocusingSpec(N=2, r=0.5, eps=0.01, R=64.0, S=8.0, rho=100.0)
    datum = sl.build_focusing(spec)
    assert len(datum.omega2_centers) == 3
    rep = sl.verify_resonance(spec, datum, 0)
    assert rep.pass_ and rep.min_ratio >= 0.5
    control = sl.verify_resonance(spec, datum, 0, time_offset=0.5 / 64.0)
    assert not control.pass_


def test_nonelliptic():
    spec = sl.NonellipticSpec()
    datum = sl.build_nonelliptic(spec, 2)
    rep = sl.verify_nonelliptic(datum, 25, 11)
    assert rep.fraction == 1.0


def test_thresholds():
    F = sl.ThresholdFamily
    assert sl.threshold_s0(F.Schrodinger, N=2, r=0.5) == pytest.approx(2.0 / 7.0)
    assert sl.threshold_s0(F.Nonelliptic, N=2) == pytest.approx(0.5)
    assert sl.threshold_inverse_r(1.0 / 3.0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        sl.threshold_s0(F.Fractional, N=2, r=0.5, a=0.5)


def test_packets():
    lat = sl.make_packet_lattice(1, 4.0, 6.0, 32)
    assert lat.side() == pytest.approx(4.0)
    mid = min(
        range(len(lat.theta_centers)),
        key=lambda i: abs(abs(lat.theta_centers[i][0]) - 0.75 * 2**4),
    )
    f = sl.packet_field(lat, mid, [0], 64)
    coeffs = sl.decompose(f, lat)
    # off-grid atoms: frame is only near-tight, tail leaves the truncated box
    assert coeffs.energy() == pytest.approx(coeffs.source_norm**2, rel=0.05)


def test_maximal():
    f = sl.interval_indicator(-4.0, 4.0, 64)
    grid = sl.SpatialGrid([0.0], 1.0, [0.125])
    prof = sl.maximal_profile(f, [0.01, 0.02], sl.SymbolKind.elliptic(), grid)
    assert len(prof.sup_values) == grid.total_count()
    assert sl.ball_l2(prof, [0.0], 1.0) > 0.0
    slope, stderr = sl.fit_power_law([(2.0, 4.0), (4.0, 16.0), (8.0, 64.0)])
    assert slope == pytest.approx(2.0)
