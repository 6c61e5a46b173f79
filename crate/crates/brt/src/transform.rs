//! Forward and inverse multi-scale residual decomposition.
//!
//! The forward pass applies the kernel smoother `n - 1` times. Each step
//! peels off the detail the smoother removed — the residual, stored as one
//! scale — and carries the coarser iterate forward; the final iterate is kept
//! as the coarsest scale. Writing the iterates as `s_1 = x, s_2, ..., s_n`,
//! the scales are
//!
//! ```text
//! r_j = s_j - s_{j+1}   (j = 1 .. n-1),      r_n = s_n,
//! ```
//!
//! so the sum of all scales telescopes back to `x` sample for sample. The
//! inverse transform is therefore a plain pointwise sum: reconstruction is
//! exact by construction and puts no conditions on the kernel whatsoever.
//! Early scales hold the fastest detail (and most of the noise); later
//! scales hold progressively slower structure.

use crate::error::BrtError;
use crate::kernel::{nw_smooth, KernelStepParams};
use crate::types::{BrtConfig, ResidualStack, Signal};

/// Decomposes `signal` into `config.n_scales()` residual scales.
pub fn forward_brt(signal: &Signal, config: &BrtConfig) -> Result<ResidualStack, BrtError> {
    let window_radius = config.validate_for(signal)?;
    let mut residuals = Vec::with_capacity(config.n_scales());
    let mut current = signal.clone();
    for &lambda in config.lambdas() {
        let params = KernelStepParams::new(lambda, window_radius)?;
        let smoothed = nw_smooth(&current, &params)?;
        let detail: Vec<f64> = current
            .samples()
            .iter()
            .zip(smoothed.samples())
            .map(|(cur, smo)| cur - smo)
            .collect();
        residuals.push(Signal::from_computed(detail, signal.sample_rate_hz()));
        current = smoothed;
    }
    residuals.push(current);
    ResidualStack::new(residuals)
}

/// Sums the scales of `stack` back into a signal.
///
/// Scales are added in order, coarse last, so the result is reproducible
/// bit for bit. The stack constructor already enforces equal lengths; the
/// check here guards the invariant a second time since it is what exactness
/// of the reconstruction rests on.
pub fn inverse_brt(stack: &ResidualStack) -> Result<Signal, BrtError> {
    let len = stack.source_length();
    let mut acc = vec![0.0f64; len];
    for scale in stack.residuals() {
        if scale.len() != len {
            return Err(BrtError::MismatchedLengths {
                left: len,
                right: scale.len(),
            });
        }
        for (a, s) in acc.iter_mut().zip(scale.samples()) {
            *a += s;
        }
    }
    Signal::new(acc, stack.sample_rate_hz())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngExt;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // Constants cascade to near-zero detail scales; 1e-12 absorbs the ulp-level
    // rounding of the weighted mean of equal values.
    const CONSTANT_TOL: f64 = 1e-12;

    fn random_signal(rng: &mut ChaCha8Rng, len: usize, rate: f64) -> Signal {
        let samples: Vec<f64> = (0..len).map(|_| rng.random::<f64>() * 4.0 - 2.0).collect();
        Signal::new(samples, rate).unwrap()
    }

    #[test]
    fn produces_exactly_n_scales() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let signal = random_signal(&mut rng, 100, 50.0);
        for n in [2usize, 3, 6, 9] {
            let config = BrtConfig::uniform(n, 0.5, 0.1).unwrap();
            let stack = forward_brt(&signal, &config).unwrap();
            assert_eq!(stack.n_scales(), n);
            assert_eq!(stack.source_length(), 100);
            assert_eq!(stack.sample_rate_hz(), 50.0);
        }
    }

    #[test]
    fn reconstruction_is_exact_to_machine_precision() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let signal = random_signal(&mut rng, 257, 128.0);
        let config = BrtConfig::uniform(6, signal.std_dev(), 0.1).unwrap();
        let stack = forward_brt(&signal, &config).unwrap();
        let back = inverse_brt(&stack).unwrap();
        let scale = signal.samples().iter().fold(1.0f64, |m, s| m.max(s.abs()));
        for (orig, rec) in signal.samples().iter().zip(back.samples()) {
            assert!((orig - rec).abs() <= 1e-9 * scale);
        }
        assert_eq!(back.sample_rate_hz(), 128.0);
    }

    #[test]
    fn constant_input_degenerates_to_coarse_scale_only() {
        let signal = Signal::new(vec![2.75; 64], 32.0).unwrap();
        // default bandwidth would be 0 here, so pass one explicitly
        let config = BrtConfig::uniform(5, 1.0, 0.1).unwrap();
        let stack = forward_brt(&signal, &config).unwrap();
        for detail in &stack.residuals()[..4] {
            for &r in detail.samples() {
                assert!(r.abs() <= CONSTANT_TOL);
            }
        }
        for &r in stack.residual(4).samples() {
            assert!((r - 2.75).abs() <= CONSTANT_TOL);
        }
    }

    #[test]
    fn two_scale_split_matches_single_smoothing_step() {
        // n = 2: scale 2 is one smoothing pass, scale 1 the difference.
        let signal = Signal::new(vec![0.0, 1.0, 0.0], 10.0).unwrap();
        let config = BrtConfig::uniform(2, 1.0, 0.1).unwrap();
        let stack = forward_brt(&signal, &config).unwrap();

        let params = KernelStepParams::new(1.0, 1).unwrap();
        let smoothed = nw_smooth(&signal, &params).unwrap();
        for i in 0..3 {
            assert_eq!(
                stack.residual(1).samples()[i].to_bits(),
                smoothed.samples()[i].to_bits()
            );
            assert_eq!(
                stack.residual(0).samples()[i].to_bits(),
                (signal.samples()[i] - smoothed.samples()[i]).to_bits()
            );
        }
    }

    #[test]
    fn iterates_never_widen_their_range() {
        // Each partial reconstruction from scale j is the j-th smoothing
        // iterate; convexity of the smoother means min can only rise and max
        // only fall along the cascade (up to summation rounding).
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let signal = random_signal(&mut rng, 200, 100.0);
        let config = BrtConfig::uniform(6, 0.8, 0.05).unwrap();
        let stack = forward_brt(&signal, &config).unwrap();

        let span = |s: &Signal| {
            let min = s.samples().iter().cloned().fold(f64::INFINITY, f64::min);
            let max = s
                .samples()
                .iter()
                .cloned()
                .fold(f64::NEG_INFINITY, f64::max);
            (min, max)
        };
        let mut prev = span(&stack.partial_reconstruction(0));
        for j in 1..stack.n_scales() {
            let cur = span(&stack.partial_reconstruction(j));
            assert!(cur.0 >= prev.0 - 1e-9, "min shrank at scale {j}");
            assert!(cur.1 <= prev.1 + 1e-9, "max grew at scale {j}");
            prev = cur;
        }
    }

    #[test]
    fn shift_moves_all_scales_but_only_the_coarse_one_keeps_it() {
        // nw(x + c) = nw(x) + c, so every detail scale is unchanged and the
        // shift lands entirely in the coarsest scale.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let signal = random_signal(&mut rng, 150, 75.0);
        let shifted =
            Signal::new(signal.samples().iter().map(|s| s + 5.0).collect(), 75.0).unwrap();
        let config = BrtConfig::uniform(4, 0.7, 0.1).unwrap();
        let stack_a = forward_brt(&signal, &config).unwrap();
        let stack_b = forward_brt(&shifted, &config).unwrap();
        for j in 0..3 {
            for (a, b) in stack_a
                .residual(j)
                .samples()
                .iter()
                .zip(stack_b.residual(j).samples())
            {
                assert!((a - b).abs() < 1e-9);
            }
        }
        for (a, b) in stack_a
            .residual(3)
            .samples()
            .iter()
            .zip(stack_b.residual(3).samples())
        {
            assert!((b - (a + 5.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn inverse_of_zero_stack_is_zero() {
        let zero = Signal::new(vec![0.0; 8], 10.0).unwrap();
        let stack = ResidualStack::new(vec![zero.clone(), zero]).unwrap();
        let out = inverse_brt(&stack).unwrap();
        assert!(out.samples().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn inverse_sums_pointwise() {
        let a = Signal::new(vec![1.0, 2.0], 10.0).unwrap();
        let b = Signal::new(vec![3.0, 4.0], 10.0).unwrap();
        let stack = ResidualStack::new(vec![a, b]).unwrap();
        let out = inverse_brt(&stack).unwrap();
        assert_eq!(out.samples(), &[4.0, 6.0]);
    }

    #[test]
    fn per_scale_lambdas_are_applied_in_order() {
        // A decomposition with two different bandwidths must equal chaining
        // the two smoothing steps by hand.
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let signal = random_signal(&mut rng, 60, 30.0);
        let config = BrtConfig::new(3, vec![0.3, 2.0], 0.1).unwrap();
        let stack = forward_brt(&signal, &config).unwrap();

        let w = config.validate_for(&signal).unwrap();
        let s2 = nw_smooth(&signal, &KernelStepParams::new(0.3, w).unwrap()).unwrap();
        let s3 = nw_smooth(&s2, &KernelStepParams::new(2.0, w).unwrap()).unwrap();
        for i in 0..60 {
            assert_eq!(
                stack.residual(2).samples()[i].to_bits(),
                s3.samples()[i].to_bits()
            );
            assert_eq!(
                stack.residual(1).samples()[i].to_bits(),
                (s2.samples()[i] - s3.samples()[i]).to_bits()
            );
        }
    }

    #[test]
    fn window_too_small_is_rejected_up_front() {
        let signal = Signal::new(vec![0.0, 1.0, 0.0, 1.0], 2.0).unwrap();
        let config = BrtConfig::uniform(3, 1.0, 0.1).unwrap(); // 0.2 samples
        assert!(matches!(
            forward_brt(&signal, &config),
            Err(BrtError::WindowTooSmall { .. })
        ));
    }
}
