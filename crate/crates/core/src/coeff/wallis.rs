use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::One;

/// Central binomial coefficient `C(2n, n)`.
pub fn central_binomial(n: usize) -> BigInt {
    binomial(BigInt::from(2 * n), BigInt::from(n))
}

/// Wallis ratio `W_n = (2n−1)!!/(2n)!! = C(2n, n)/4^n`.
pub fn wallis(n: usize) -> BigRational {
    BigRational::new(central_binomial(n), BigInt::one() << (2 * n))
}

/// `16^k · W_k²/(k+1)`, an integer: the product of the k-th Catalan number
/// and `C(2k, k)`.
pub(crate) fn scaled_weight(cb: &BigInt, k: usize) -> BigInt {
    let catalan = cb / BigInt::from(k + 1);
    catalan * cb
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_values() {
        assert_eq!(wallis(0), q(1, 1));
        assert_eq!(wallis(1), q(1, 2));
        assert_eq!(wallis(2), q(3, 8));
        assert_eq!(wallis(3), q(5, 16));
    }

    #[test]
    fn weight_matches_definition() {
        for k in 0..30 {
            let w = wallis(k);
            let direct = &w * &w / BigRational::from_integer(BigInt::from(k + 1))
                * BigRational::from_integer(BigInt::one() << (4 * k));
            let s = scaled_weight(&central_binomial(k), k);
            assert_eq!(direct, BigRational::from_integer(s));
        }
    }
}
