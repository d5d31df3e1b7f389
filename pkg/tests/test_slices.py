import cmath
from fractions import Fraction

import pytest

from critslice.errors import (
    DegenerateMap,
    DegenerateT,
    LambdaEqualsDegree,
    PoleAtMinusI,
    SingularParameter,
)
from critslice.family import INF, critical_points, derivative, evaluate, is_infinite
from critslice.slices import (
    Sheet,
    SliceKind,
    SlicePoint,
    SliceSpec,
    View,
    blaschke,
    cayley_inverse,
    cayley_view,
    cubic_per1,
    resolve,
    s1_lambda,
    s1_zero,
    s2_lambda,
    s2_zero,
    two_cycle_quadratic,
    unit_rotation,
)


def _rand_disk(rng, radius=1.0):
    while True:
        z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
        if abs(z) <= radius:
            return z


class TestS1Zero:
    def test_fixed_critical_identities(self, rng):
        for _ in range(300):
            d = int(rng.choice([2, 3, 4, 5]))
            b = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            if min(abs(b), abs(b - 1), abs(b - d)) < 1e-3:
                continue
            p = s1_zero(b, d)
            assert abs(evaluate(p, 1) - 1) <= 1e-10
            assert abs(derivative(p, 1)) <= 1e-10

    def test_second_critical_point_formula(self, rng):
        for _ in range(100):
            d = int(rng.choice([2, 3, 4]))
            b = complex(rng.uniform(-4, 4), rng.uniform(-4, 4))
            if min(abs(b), abs(b - 1), abs(b - d)) < 0.05:
                continue
            p = s1_zero(b, d)
            z2 = (1 - d * b) / (b * (b - d))
            pts = critical_points(p)
            assert min(abs(pts[0] - z2), abs(pts[1] - z2)) <= 1e-8 * max(1, abs(z2))
            assert min(abs(pts[0] - 1), abs(pts[1] - 1)) <= 1e-8

    @pytest.mark.parametrize("bad", [0.0, 1.0, 3.0])
    def test_singular_parameters(self, bad):
        with pytest.raises(SingularParameter):
            s1_zero(bad, 3)

    def test_singular_collision_d3(self):
        # At b = 1 the second critical point collides with z = 1.
        with pytest.raises(SingularParameter):
            s1_zero(1.0, 3)

    def test_one_over_d_is_ordinary(self):
        p = s1_zero(1 / 3, 3)
        assert abs(evaluate(p, 1) - 1) <= 1e-10


class TestS2Zero:
    def test_hand_value(self):
        # d=3, a=2: b = (1-16-3(1-2)) / (2(1-16-3(1-2)*8)) = -12/18 = -2/3,
        # giving the genuine cycle f(1)=2, f(2)=1.
        p = s2_zero(2.0, 3)
        assert abs(evaluate(p, 1) - 2) <= 1e-12
        assert abs(evaluate(p, 2) - 1) <= 1e-12

    def test_residual_oracle(self, rng):
        checked = 0
        while checked < 300:
            d = int(rng.choice([2, 3, 4, 5]))
            a = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            try:
                p = s2_zero(a, d)
            except SingularParameter:
                continue
            t = evaluate(p, 1)
            assert abs(t - a) <= 1e-9 * max(1.0, abs(a))
            assert abs(evaluate(p, t) - 1) <= 1e-9
            # (f^2)'(1) = f'(t) f'(1) = 0 since z=1 is critical.
            assert abs(derivative(p, 1) * derivative(p, t)) <= 1e-9
            checked += 1

    def test_puncture_at_one(self):
        with pytest.raises(SingularParameter):
            s2_zero(1.0, 3)

    def test_degenerate_at_zero(self):
        with pytest.raises(SingularParameter):
            s2_zero(0.0, 3)


class TestS1Lambda:
    def test_worked_example(self):
        # d=2, lam=-1, beta=0: alpha=-4/3, gamma=-1/3, the polynomial -3z^3+4z^2.
        p = s1_lambda(0, -1, 2)
        assert abs(p.alpha - (-4 / 3)) < 1e-15
        assert abs(p.gamma - (-1 / 3)) < 1e-15
        for z in (0.5, 1.0, -2.0 + 1j):
            assert abs(evaluate(p, z) - (-3 * z**3 + 4 * z**2)) <= 1e-12 * max(
                1.0, abs(z) ** 3
            )
        assert abs(evaluate(p, 1) - 1) <= 1e-10
        assert abs(derivative(p, 1) - (-1)) <= 1e-10

    def test_lambda_zero_superattracting(self, rng):
        for _ in range(20):
            beta = complex(rng.normal(0, 2), rng.normal(0, 2))
            p = s1_lambda(beta, 0, 3)
            assert abs(derivative(p, 1)) <= 1e-10

    def test_residual_oracle(self, rng):
        for _ in range(300):
            d = int(rng.choice([2, 3, 4, 5]))
            lam = _rand_disk(rng)
            beta = complex(rng.normal(0, 3), rng.normal(0, 3))
            if abs(beta - 1) < 1e-3:
                continue
            p = s1_lambda(beta, lam, d)
            assert abs(evaluate(p, 1) - 1) <= 1e-10
            assert abs(derivative(p, 1) - lam) <= 1e-10

    def test_lambda_equals_degree(self):
        with pytest.raises(LambdaEqualsDegree):
            s1_lambda(0.5, 2.0, 2)

    def test_degenerate_at_beta_one(self):
        with pytest.raises(DegenerateMap):
            s1_lambda(1.0, 0.5, 3)


class TestS2Lambda:
    def test_residual_oracle(self, rng):
        checked = 0
        while checked < 300:
            d = int(rng.choice([2, 3, 4, 5]))
            lam = _rand_disk(rng)
            t = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if abs(t) < 0.1 or abs(t - 1) < 0.1:
                continue
            sheet = Sheet.PLUS if rng.uniform() < 0.5 else Sheet.MINUS
            try:
                p = s2_lambda(t, lam, d, sheet)
            except (DegenerateMap, SingularParameter):
                continue
            assert abs(evaluate(p, 1) - t) <= 1e-9 * max(1.0, abs(t))
            assert abs(evaluate(p, t) - 1) <= 1e-9
            assert abs(derivative(p, 1) * derivative(p, t) - lam) <= 1e-9
            checked += 1

    def test_degenerate_t(self):
        with pytest.raises(DegenerateT):
            s2_lambda(1.0, 0.5, 3)
        with pytest.raises(DegenerateT):
            s2_lambda(0.0, 0.5, 3)

    def test_sheet_vieta_consistency(self, rng):
        checked = 0
        while checked < 200:
            d = int(rng.choice([2, 3, 4]))
            lam = _rand_disk(rng)
            t = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            if abs(t) < 0.2 or abs(t - 1) < 0.2:
                continue
            A, B, C = two_cycle_quadratic(t, lam, d)
            if abs(A) <= 1e-10 * max(abs(B), abs(C), 1.0):
                continue
            try:
                pp = s2_lambda(t, lam, d, Sheet.PLUS)
                pm = s2_lambda(t, lam, d, Sheet.MINUS)
            except (DegenerateMap, SingularParameter):
                continue
            s = pp.alpha + pm.alpha
            q = pp.alpha * pm.alpha
            assert abs(s - (-B / A)) <= 1e-9 * max(1.0, abs(s))
            assert abs(q - C / A) <= 1e-9 * max(1.0, abs(q))
            checked += 1

    def test_lambda_zero_matches_second_iterate(self, rng):
        from critslice.family import cycle_multiplier

        for _ in range(20):
            t = complex(rng.uniform(1.2, 2.5), rng.uniform(0.2, 1.0))
            p = s2_lambda(t, 0, 3, Sheet.PLUS)
            assert abs(cycle_multiplier(p, [1, t])) <= 1e-9


class TestBlaschke:
    def test_circle_preservation(self, rng):
        for _ in range(100):
            w1, w2 = rng.uniform(0.02, 0.98), rng.uniform(0.02, 0.98)
            p = blaschke(w1, w2, 1.0, 1.0, 3)
            s = rng.uniform()
            z = cmath.exp(2j * cmath.pi * s)
            assert abs(abs(evaluate(p, z)) - 1) <= 1e-9

    def test_critical_points_on_circle(self, rng):
        for _ in range(200):
            w1, w2 = rng.uniform(0.02, 0.98), rng.uniform(0.02, 0.98)
            p = blaschke(w1, w2, 1.0, 1.0, 3)
            for z in critical_points(p):
                assert abs(abs(z) - 1) <= 1e-9

    def test_unit_b_second_point_on_circle(self, rng):
        # |1-db| = |b-d| whenever |b|=1 and d is real, so |z2| = 1 even
        # when |a| < 1.
        for _ in range(200):
            d = int(rng.choice([2, 3, 4]))
            w2 = rng.uniform(0.02, 0.98)
            b = cmath.exp(2j * cmath.pi * w2)
            z2 = (1 - d * b) / (b * (b - d))
            assert abs(abs(z2) - 1) <= 1e-12
            p = blaschke(rng.uniform(0.2, 1.0), w2, 0.7, 1.0, d)
            pts = critical_points(p)
            assert min(abs(abs(pts[0]) - 1), abs(abs(pts[1]) - 1)) <= 1e-9

    def test_singular_at_b_one(self):
        with pytest.raises(SingularParameter):
            blaschke(0.0, 0.0, 1.0, 1.0, 3)

    def test_radii_validation(self):
        with pytest.raises(ValueError):
            blaschke(0.1, 0.1, 0.0, 1.0, 3)
        with pytest.raises(ValueError):
            blaschke(0.1, 0.1, 1.0, 1.5, 3)


class TestCayley:
    def test_values(self):
        assert cayley_view(1j) == 0
        assert cayley_view(0) == -1
        assert cayley_view(INF) == 1

    def test_pole(self):
        with pytest.raises(PoleAtMinusI):
            cayley_view(-1j)

    def test_roundtrip(self, rng):
        for _ in range(200):
            s = complex(rng.normal(0, 3), rng.normal(0, 3))
            if abs(s + 1j) < 0.1:
                continue
            assert abs(cayley_inverse(cayley_view(s)) - s) <= 1e-12 * max(1.0, abs(s))

    def test_inverse_of_one_is_infinity(self):
        assert is_infinite(cayley_inverse(1.0))


class TestCubic:
    def test_double_critical_point(self):
        cm = cubic_per1(0, 0)
        assert cm.critical == (0, 0)

    def test_factored_critical_points(self):
        cm = cubic_per1(1.5, 0)
        assert sorted(z.real for z in cm.critical) == pytest.approx([-1.0, 0.0])

    def test_critical_residual(self, rng):
        for _ in range(300):
            b = complex(rng.normal(0, 2), rng.normal(0, 2))
            mu = complex(rng.normal(0, 1), rng.normal(0, 1))
            cm = cubic_per1(b, mu)
            for z in cm.critical:
                assert abs(cm.derivative(z)) <= 1e-10 * max(1.0, abs(b) ** 2, abs(mu))

    def test_escape_bound(self, rng):
        # |P(z)| >= 2|z| on |z| = R certifies the escape radius.
        for _ in range(100):
            b = complex(rng.normal(0, 2), rng.normal(0, 2))
            mu = complex(rng.normal(0, 1), rng.normal(0, 1))
            cm = cubic_per1(b, mu)
            for _ in range(10):
                z = cm.escape_radius * cmath.exp(2j * cmath.pi * rng.uniform())
                assert abs(cm.evaluate(z)) >= 2 * abs(z)


class TestUnitRotation:
    def test_exact_quarters(self):
        assert unit_rotation(Fraction(1, 2)) == -1
        assert unit_rotation(Fraction(3, 4)) == -1j
        assert unit_rotation(Fraction(5, 2)) == -1
        assert unit_rotation(0.5) == -1
        assert unit_rotation(Fraction(0)) == 1

    def test_general(self):
        lam = unit_rotation(Fraction(1, 3))
        assert abs(lam - cmath.exp(2j * cmath.pi / 3)) < 1e-15
        assert abs(abs(lam) - 1) < 1e-15


class TestResolve:
    def test_dispatch_s1zero(self):
        spec = SliceSpec(kind=SliceKind.S1_ZERO, d=3)
        assert resolve(SlicePoint(spec, 2.0)) == s1_zero(2.0, 3)

    def test_dispatch_blaschke_packing(self):
        spec = SliceSpec(kind=SliceKind.BLASCHKE, d=3, radii=(1.0, 1.0))
        assert resolve(SlicePoint(spec, 0.25 + 0.5j)) == blaschke(0.25, 0.5, 1.0, 1.0, 3)

    def test_blaschke_torus_wrap(self):
        spec = SliceSpec(kind=SliceKind.BLASCHKE, d=3)
        pt = SlicePoint(spec, 1.25 + 2.5j)
        assert pt.s == 0.25 + 0.5j

    def test_lambda_equals_degree_guard(self):
        with pytest.raises(LambdaEqualsDegree):
            SliceSpec(kind=SliceKind.S1_LAMBDA, d=2, lam=2.0)

    def test_cayley_view_pullback(self):
        raw = SliceSpec(kind=SliceKind.S1_ZERO, d=3)
        cay = SliceSpec(kind=SliceKind.S1_ZERO, d=3, view=View.CAYLEY)
        w = 0.3 + 0.2j
        assert resolve(SlicePoint(cay, w)) == resolve(SlicePoint(raw, cayley_inverse(w)))

    def test_cayley_pole_is_singular(self):
        cay = SliceSpec(kind=SliceKind.S1_ZERO, d=3, view=View.CAYLEY)
        with pytest.raises(SingularParameter):
            resolve(SlicePoint(cay, 1.0 + 0j))

    def test_cubic_kind_does_not_resolve(self):
        spec = SliceSpec(kind=SliceKind.CUBIC_PER1, lam=0j)
        with pytest.raises(ValueError):
            resolve(SlicePoint(spec, 0.5))

    def test_conjugation_equivariance(self, rng):
        for kind, make in (
            (SliceKind.S1_ZERO, lambda s: SliceSpec(kind=SliceKind.S1_ZERO, d=3)),
            (SliceKind.S2_ZERO, lambda s: SliceSpec(kind=SliceKind.S2_ZERO, d=3)),
            (SliceKind.S1_LAMBDA, lambda s: SliceSpec(kind=SliceKind.S1_LAMBDA, d=3, lam=-1 + 0j)),
        ):
            for _ in range(50):
                s = complex(rng.uniform(-3, 3), rng.uniform(0.05, 3))
                spec = make(s)
                try:
                    p = resolve(SlicePoint(spec, s))
                    q = resolve(SlicePoint(spec, s.conjugate()))
                except Exception:
                    continue
                assert q.alpha == p.alpha.conjugate()
                assert q.beta == p.beta.conjugate()
                assert q.gamma == p.gamma.conjugate()

    def test_theta_sets_multiplier(self):
        spec = SliceSpec(kind=SliceKind.S1_LAMBDA, d=3, theta=Fraction(1, 2))
        assert spec.lam == -1
