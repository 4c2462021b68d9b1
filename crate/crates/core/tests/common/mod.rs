#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use phaselab_core::{Axis, Qubit, RotationSchedule, RotationSegment, TwoQubitState};
use proptest::prelude::*;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_axis<R: Rng>(rng: &mut R) -> Axis {
    loop {
        let v = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-2 && n2 <= 1.0 {
            return Axis::direction_of(v).unwrap();
        }
    }
}

pub fn random_state<R: Rng>(rng: &mut R) -> TwoQubitState {
    let amps = [(); 4].map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    TwoQubitState::new(amps).unwrap()
}

pub fn random_qubit<R: Rng>(rng: &mut R) -> Qubit {
    if rng.gen_bool(0.5) {
        Qubit::First
    } else {
        Qubit::Second
    }
}

pub fn random_segments<R: Rng>(rng: &mut R, max_len: usize) -> Vec<RotationSegment> {
    let n = rng.gen_range(1..=max_len);
    (0..n)
        .map(|_| RotationSegment::new(random_axis(rng), rng.gen_range(0.05..2.0 * PI)).unwrap())
        .collect()
}

pub fn random_schedule<R: Rng>(rng: &mut R, max_len: usize) -> RotationSchedule {
    RotationSchedule::new(
        random_state(rng),
        random_qubit(rng),
        random_segments(rng, max_len),
    )
}

pub fn axis_strategy() -> impl Strategy<Value = Axis> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("non-degenerate direction", |(x, y, z)| {
            x * x + y * y + z * z > 1e-2
        })
        .prop_map(|(x, y, z)| Axis::direction_of([x, y, z]).unwrap())
}

pub fn complex_strategy() -> impl Strategy<Value = Complex64> {
    (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| c(re, im))
}

pub fn state_strategy() -> impl Strategy<Value = TwoQubitState> {
    [
        complex_strategy(),
        complex_strategy(),
        complex_strategy(),
        complex_strategy(),
    ]
    .prop_filter("non-zero amplitudes", |a| {
        a.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-2
    })
    .prop_map(|a| TwoQubitState::new(a).unwrap())
}

pub fn qubit_strategy() -> impl Strategy<Value = Qubit> {
    prop_oneof![Just(Qubit::First), Just(Qubit::Second)]
}

pub fn segment_strategy() -> impl Strategy<Value = RotationSegment> {
    (axis_strategy(), 0.05f64..2.0 * PI).prop_map(|(a, t)| RotationSegment::new(a, t).unwrap())
}

pub fn schedule_strategy(max_len: usize) -> impl Strategy<Value = RotationSchedule> {
    (
        state_strategy(),
        qubit_strategy(),
        prop::collection::vec(segment_strategy(), 1..=max_len),
    )
        .prop_map(|(s, q, segs)| RotationSchedule::new(s, q, segs))
}
