use rug::{Float, Integer, Rational};

/// Finds the rational with the smallest denominator `<= cap` among the
/// continued-fraction convergents of `x` lying within `window` of it.
/// Returns `None` instead of guessing when there is none.
pub fn recognize_rational(x: &Float, window: f64, cap: u64) -> Option<Rational> {
    let prec = x.prec();
    let mut rest = x.clone();
    let (mut h_prev, mut h) = (Integer::from(0), Integer::from(1));
    let (mut k_prev, mut k) = (Integer::from(1), Integer::from(0));
    for _ in 0..64 {
        let a = rest.clone().floor().to_integer()?;
        let h_next = Integer::from(&a * &h) + &h_prev;
        let k_next = Integer::from(&a * &k) + &k_prev;
        if k_next > cap {
            return None;
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let candidate = Rational::from((h.clone(), k.clone()));
        let diff = Float::with_val(prec, x - &candidate).abs();
        if diff <= window {
            return Some(candidate);
        }
        let frac = Float::with_val(prec, &rest - &a);
        if frac.is_zero() {
            return None;
        }
        rest = Float::with_val(prec, 1) / frac;
    }
    None
}
