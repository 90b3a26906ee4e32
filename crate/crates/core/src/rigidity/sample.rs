use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use super::Configuration;
use crate::linalg::PrimeField;

/// `n` points with coordinates uniform in `[0, p)`, drawn point by point, so
/// the first `k` points of an `n`-point draw equal a `k`-point draw from the
/// same generator state.
pub fn random_prime_configuration<R: Rng + ?Sized>(
    field: &PrimeField,
    n: usize,
    dim: usize,
    rng: &mut R,
) -> Configuration<u64> {
    let p = field.modulus();
    let points = (0..n).map(|_| (0..dim).map(|_| rng.gen_range(0..p)).collect()).collect();
    Configuration::new(dim, points).expect("points have the requested dimension")
}

/// `n` points with integer coordinates uniform in `[-bound, bound]`.
pub fn random_integer_configuration<R: Rng + ?Sized>(
    n: usize,
    dim: usize,
    bound: i64,
    rng: &mut R,
) -> Configuration<BigRational> {
    let points = (0..n)
        .map(|_| {
            (0..dim)
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-bound..=bound))))
                .collect()
        })
        .collect();
    Configuration::new(dim, points).expect("points have the requested dimension")
}
