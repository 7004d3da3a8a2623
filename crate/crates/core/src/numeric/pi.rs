use rug::Float;

/// `arctan(1/x)` by its Taylor series, to about `prec` bits.
fn arctan_inv(x: u32, prec: u32) -> Float {
    let mut power = Float::with_val(prec, 1) / x;
    let x2 = x * x;
    let mut sum = power.clone();
    let threshold = Float::with_val(prec, Float::i_exp(1, -(prec as i32) - 8));
    let mut k = 1u32;
    loop {
        power /= x2;
        let term = Float::with_val(prec, &power / (2 * k + 1));
        if term < threshold {
            break;
        }
        if k % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        k += 1;
    }
    sum
}

/// `π = 16 arctan(1/5) - 4 arctan(1/239)`, evaluated with guard bits and
/// rounded to `prec`.
pub fn pi(prec: u32) -> Float {
    let work = prec + 32;
    let value = arctan_inv(5, work) * 16u32 - arctan_inv(239, work) * 4u32;
    Float::with_val(prec, value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::float::Constant;

    #[test]
    fn agrees_with_mpfr_constant() {
        for prec in [53, 128, 300, 1000] {
            let reference = Float::with_val(prec, Constant::Pi);
            let diff = Float::with_val(prec, &pi(prec) - &reference).abs();
            let ulp = Float::with_val(prec, Float::i_exp(1, 2 - prec as i32));
            assert!(diff <= ulp, "prec {prec}: {diff}");
        }
    }
}
