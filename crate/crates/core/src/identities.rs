//! Standalone exact verification of the binomial machinery: the
//! convolution identity, the alternating double-binomial sum with its
//! piecewise closed form, the telescoping certificate, and the auxiliary
//! recurrences. Everything is evaluated pointwise in exact arithmetic.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{binom, Int, Rat};

/// Pass/fail record for one identity sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity_name: String,
    /// Human-readable description of the parameter ranges checked.
    pub parameters: String,
    pub passed: bool,
    pub first_failure: Option<FailureWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureWitness {
    pub parameters: Vec<(String, i64)>,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl IdentityReport {
    fn pass(name: &str, parameters: String) -> Self {
        IdentityReport {
            identity_name: String::from(name),
            parameters,
            passed: true,
            first_failure: None,
        }
    }

    fn fail(name: &str, parameters: String, witness: FailureWitness) -> Self {
        IdentityReport {
            identity_name: String::from(name),
            parameters,
            passed: false,
            first_failure: Some(witness),
        }
    }
}

/// Both sides of the convolution identity
/// `sum_q (-1)^q binom(b, q) binom(a-q, c-q) = binom(a-b, c)`
/// for `0 <= c <= a`, `0 <= b`.
pub fn convolution_identity(a: i64, b: i64, c: i64) -> Result<(Int, Int)> {
    if !(0 <= c && c <= a && 0 <= b) {
        return Err(Error::OutOfDomain(format!(
            "need 0 <= c <= a and 0 <= b, got a={a}, b={b}, c={c}"
        )));
    }
    let mut lhs = Int::zero();
    for q in 0..=c {
        let term = binom(b, q) * binom(a - q, c - q);
        if q % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    let rhs = binom(a - b, c);
    Ok((lhs, rhs))
}

fn check_alternating_domain(n: i64, d: i64, j: i64, k: i64) -> Result<()> {
    if !(0 <= d && d < n && 0 <= k && k <= d && k <= j && j <= n) {
        return Err(Error::OutOfDomain(format!(
            "need 0 <= d < n, 0 <= k <= d, k <= j <= n; got n={n}, d={d}, j={j}, k={k}"
        )));
    }
    Ok(())
}

/// The alternating sum
/// `sum_{i=0}^{n-d} (-1)^(n-d-i) i binom(i+j-k, j) binom(j+1, n-d-i)`
/// by direct summation.
pub fn alternating_sum_value(n: i64, d: i64, j: i64, k: i64) -> Result<Int> {
    check_alternating_domain(n, d, j, k)?;
    let a = n - d;
    let mut sum = Int::zero();
    for i in 0..=a {
        let term = Int::from(i) * binom(i + j - k, j) * binom(j + 1, a - i);
        if (a - i) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// Piecewise closed form of the same sum: `j+1`, `n-d`, or `0` depending on
/// how `k` compares with `n-d`.
pub fn alternating_sum_closed(n: i64, d: i64, j: i64, k: i64) -> Result<Int> {
    check_alternating_domain(n, d, j, k)?;
    let a = n - d;
    Ok(if k < a {
        Int::from(j + 1)
    } else if k == a {
        Int::from(a)
    } else {
        Int::zero()
    })
}

/// One summand of the telescoped sum:
/// `F(k, i) = (-1)^(a-i) i binom(i+j-k, j) binom(j+1, a-i)`.
fn summand(a: i64, j: i64, k: i64, i: i64) -> Int {
    let v = Int::from(i) * binom(i + j - k, j) * binom(j + 1, a - i);
    if (a - i) % 2 == 0 {
        v
    } else {
        -v
    }
}

/// The certificate multiplier
/// `R(k, i) = (-j-1+a-i)(i-k)(ka - ikj + aji - ki - aj) / ((i+j-k) i)`.
fn certificate_r(a: i64, j: i64, k: i64, i: i64) -> Rat {
    let num = Int::from(-j - 1 + a - i)
        * Int::from(i - k)
        * Int::from(k * a - i * k * j + a * j * i - k * i - a * j);
    let den = Int::from(i + j - k) * Int::from(i);
    Rat::new(num, den)
}

fn certificate_g(a: i64, j: i64, k: i64, i: i64) -> Rat {
    Rat::from(summand(a, j, k, i)) * certificate_r(a, j, k, i)
}

/// Pointwise check of the telescoping certificate:
/// `(a-k)(a-1-k)(j+1)(F(k,i) - F(k+1,i)) = G(k,i+1) - G(k,i)`
/// with `G = F * R`.
pub fn wz_certificate_check(a: i64, j: i64, k: i64, i: i64) -> Result<bool> {
    if a < 1 || k < 0 || k > j {
        return Err(Error::OutOfDomain(format!(
            "need a >= 1 and 0 <= k <= j, got a={a}, j={j}, k={k}"
        )));
    }
    if i < 1 || i + j - k < 1 {
        return Err(Error::OutOfDomain(format!(
            "outside certificate domain: denominator (i+j-k) i vanishes at i={i}, j={j}, k={k}"
        )));
    }
    let factor = Int::from(a - k) * Int::from(a - 1 - k) * Int::from(j + 1);
    let lhs = Rat::from(factor * (summand(a, j, k, i) - summand(a, j, k + 1, i)));
    let rhs = certificate_g(a, j, k, i + 1) - certificate_g(a, j, k, i);
    Ok(lhs == rhs)
}

/// Truncated sum `f(k) = sum_{i=0}^{a} F(k, i)`; terms past `i = a` vanish
/// because `binom(j+1, a-i) = 0` there, which the first dropped term checks.
fn telescoped_f(a: i64, j: i64, k: i64) -> Int {
    debug_assert!(summand(a, j, k, a + 1).is_zero());
    (0..=a).map(|i| summand(a, j, k, i)).sum()
}

/// Closed form of the boundary term `-G(k, 0)`.
fn neg_g_at_zero(a: i64, j: i64, k: i64) -> Int {
    let v = binom(j - k, j) * binom(j + 1, a) * Int::from(-j - 1 + a) * Int::from(k * a);
    if (a + 1) % 2 == 0 {
        v
    } else {
        -v
    }
}

/// Telescoped identity `(a-k)(a-1-k)(j+1)(f(k) - f(k+1)) = -G(k, 0)`, plus
/// the consequence `f(k+1) = f(k)` whenever `k` avoids `{a-1, a}`.
pub fn wz_telescoped_check(a: i64, j: i64, k: i64) -> Result<bool> {
    if a < 1 || k < 0 || k > j {
        return Err(Error::OutOfDomain(format!(
            "need a >= 1 and 0 <= k <= j, got a={a}, j={j}, k={k}"
        )));
    }
    let fk = telescoped_f(a, j, k);
    let fk1 = telescoped_f(a, j, k + 1);
    let factor = Int::from(a - k) * Int::from(a - 1 - k) * Int::from(j + 1);
    let lhs = factor * (&fk - &fk1);
    if lhs != neg_g_at_zero(a, j, k) {
        return Ok(false);
    }
    if k != a - 1 && k != a && fk != fk1 {
        return Ok(false);
    }
    Ok(true)
}

fn aux_sum(a: i64, j: i64, shift: i64) -> Int {
    // sum_i (-1)^(a-i) i binom(i+j-shift, j) binom(j+1, a-i), truncated at a.
    (0..=a)
        .map(|i| {
            let v = Int::from(i) * binom(i + j - shift, j) * binom(j + 1, a - i);
            if (a - i) % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .sum()
}

/// Verifies the three auxiliary recurrences behind the piecewise closed
/// form, for `j` up to `j_max`.
pub fn recurrence_checks(a: i64, j_max: i64) -> Result<IdentityReport> {
    if a < 1 || j_max < a + 2 {
        return Err(Error::OutOfDomain(format!(
            "need a >= 1 and j_max >= a + 2, got a={a}, j_max={j_max}"
        )));
    }
    let name = "auxiliary recurrences";
    let params = format!("a={a}, j <= {j_max}");
    let witness = |tag: &str, j: i64, lhs: Int, rhs: Int| FailureWitness {
        parameters: alloc::vec![
            (String::from(tag), j),
            (String::from("a"), a),
        ],
        lhs: Rat::from(lhs),
        rhs: Rat::from(rhs),
    };

    // f_1(j) = j + 1, driven by (-j-2) f_1(j) + (j+1) f_1(j+1) = 0.
    let f1 = |j: i64| aux_sum(a, j, 0);
    if f1(0) != Int::one() {
        return Ok(IdentityReport::fail(name, params, witness("f1_j", 0, f1(0), Int::one())));
    }
    for j in 0..=j_max {
        if f1(j) != Int::from(j + 1) {
            return Ok(IdentityReport::fail(name, params, witness("f1_j", j, f1(j), Int::from(j + 1))));
        }
        if j < j_max {
            let rec = Int::from(-j - 2) * f1(j) + Int::from(j + 1) * f1(j + 1);
            if !rec.is_zero() {
                return Ok(IdentityReport::fail(name, params, witness("f1_rec_j", j, rec, Int::zero())));
            }
        }
    }
    // f_2(j) = a for j >= a, with vanishing second difference.
    let f2 = |j: i64| aux_sum(a, j, a);
    for j in a..=j_max {
        if f2(j) != Int::from(a) {
            return Ok(IdentityReport::fail(name, params, witness("f2_j", j, f2(j), Int::from(a))));
        }
        if j + 2 <= j_max {
            let second = f2(j) - Int::from(2) * f2(j + 1) + f2(j + 2);
            if !second.is_zero() {
                return Ok(IdentityReport::fail(name, params, witness("f2_diff_j", j, second, Int::zero())));
            }
        }
    }
    // f_3(j) = 0 for j >= a + 1.
    let f3 = |j: i64| aux_sum(a, j, a + 1);
    for j in a + 1..=j_max {
        if !f3(j).is_zero() {
            return Ok(IdentityReport::fail(name, params, witness("f3_j", j, f3(j), Int::zero())));
        }
        if j < j_max {
            let rec = Int::from(-j - 2) * f3(j) + Int::from(j + 1) * f3(j + 1);
            if !rec.is_zero() {
                return Ok(IdentityReport::fail(name, params, witness("f3_rec_j", j, rec, Int::zero())));
            }
        }
    }
    Ok(IdentityReport::pass(name, params))
}

/// Exhaustive convolution-identity sweep over `0 <= c <= a <= a_max`,
/// `0 <= b <= b_max`.
pub fn sweep_convolution(a_max: i64, b_max: i64) -> IdentityReport {
    let name = "binomial convolution";
    let params = format!("0 <= c <= a <= {a_max}, 0 <= b <= {b_max}");
    for a in 0..=a_max {
        for b in 0..=b_max {
            for c in 0..=a {
                let (lhs, rhs) = convolution_identity(a, b, c).expect("in-domain");
                if lhs != rhs {
                    return IdentityReport::fail(
                        name,
                        params,
                        FailureWitness {
                            parameters: alloc::vec![
                                (String::from("a"), a),
                                (String::from("b"), b),
                                (String::from("c"), c),
                            ],
                            lhs: Rat::from(lhs),
                            rhs: Rat::from(rhs),
                        },
                    );
                }
            }
        }
    }
    IdentityReport::pass(name, params)
}

/// Exhaustive sweep of the alternating double-binomial sum against its
/// closed form, over all admissible `(d, k, j)` for `n <= n_max`.
pub fn sweep_alternating_sum(n_max: i64) -> IdentityReport {
    let name = "alternating double-binomial sum";
    let params = format!("n <= {n_max}, all admissible (d, k, j)");
    for n in 1..=n_max {
        for d in 0..n {
            for k in 0..=d {
                for j in k..=n {
                    let lhs = alternating_sum_value(n, d, j, k).expect("in-domain");
                    let rhs = alternating_sum_closed(n, d, j, k).expect("in-domain");
                    if lhs != rhs {
                        return IdentityReport::fail(
                            name,
                            params,
                            FailureWitness {
                                parameters: alloc::vec![
                                    (String::from("n"), n),
                                    (String::from("d"), d),
                                    (String::from("j"), j),
                                    (String::from("k"), k),
                                ],
                                lhs: Rat::from(lhs),
                                rhs: Rat::from(rhs),
                            },
                        );
                    }
                }
            }
        }
    }
    IdentityReport::pass(name, params)
}

/// Pointwise certificate sweep over `1 <= a <= a_max`, `0 <= k <= j <= j_max`
/// and in-domain `1 <= i <= a + 2`, plus the telescoped identity for every
/// `(a, j, k)`.
pub fn sweep_certificate(a_max: i64, j_max: i64) -> IdentityReport {
    let name = "telescoping certificate";
    let params = format!("a <= {a_max}, j <= {j_max}, k <= j, in-domain i <= a + 2");
    let witness = |a: i64, j: i64, k: i64, i: i64| FailureWitness {
        parameters: alloc::vec![
            (String::from("a"), a),
            (String::from("j"), j),
            (String::from("k"), k),
            (String::from("i"), i),
        ],
        lhs: Rat::zero(),
        rhs: Rat::zero(),
    };
    for a in 1..=a_max {
        for j in 0..=j_max {
            for k in 0..=j {
                for i in 1..=a + 2 {
                    if i + j - k < 1 {
                        continue; // pole of the multiplier
                    }
                    if !wz_certificate_check(a, j, k, i).expect("in-domain") {
                        return IdentityReport::fail(name, params, witness(a, j, k, i));
                    }
                }
                if !wz_telescoped_check(a, j, k).expect("in-domain") {
                    return IdentityReport::fail(name, params, witness(a, j, k, -1));
                }
            }
        }
    }
    IdentityReport::pass(name, params)
}

/// Recurrence sweep for all `1 <= a <= a_max` with the given `j_max`.
pub fn sweep_recurrences(a_max: i64, j_max: i64) -> IdentityReport {
    let name = "auxiliary recurrences";
    let params = format!("a <= {a_max}, j <= {j_max}");
    for a in 1..=a_max {
        let report = recurrence_checks(a, j_max.max(a + 2)).expect("in-domain");
        if !report.passed {
            return report;
        }
    }
    IdentityReport::pass(name, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution_examples() {
        let (lhs, rhs) = convolution_identity(5, 2, 3).unwrap();
        assert_eq!(lhs, Int::one());
        assert_eq!(rhs, Int::one());
        let (lhs, rhs) = convolution_identity(7, 0, 4).unwrap();
        assert_eq!(lhs, binom(7, 4));
        assert_eq!(rhs, binom(7, 4));
        let (lhs, rhs) = convolution_identity(5, 3, 0).unwrap();
        assert_eq!(lhs, Int::one());
        assert_eq!(rhs, Int::one());
        assert!(convolution_identity(3, 1, 4).is_err());
    }

    #[test]
    fn alternating_sum_examples() {
        // n - d = 1: single surviving i = 1 term.
        for j in 0..=5 {
            assert_eq!(alternating_sum_value(6, 5, j, 0).unwrap(), Int::from(j + 1));
        }
        for j in 1..=5 {
            assert_eq!(alternating_sum_value(6, 5, j, 1).unwrap(), Int::one());
        }
        // n - d = 2, k = 0, j = 2: -9 + 12 = 3.
        assert_eq!(alternating_sum_value(4, 2, 2, 0).unwrap(), Int::from(3));
        assert!(alternating_sum_value(4, 4, 2, 0).is_err());
    }

    #[test]
    fn certificate_points() {
        assert!(wz_certificate_check(2, 3, 0, 1).unwrap());
        assert!(wz_certificate_check(3, 4, 1, 2).unwrap());
        assert!(wz_certificate_check(2, 2, 2, 1).unwrap());
    }

    #[test]
    fn certificate_pole_rejected() {
        // i + j - k = 0 is outside the certificate domain.
        assert!(matches!(wz_certificate_check(2, 2, 2, 0), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn telescoped_points() {
        assert!(wz_telescoped_check(3, 5, 0).unwrap());
        assert_eq!(telescoped_f(3, 5, 0), telescoped_f(3, 5, 1));
        assert!(wz_telescoped_check(3, 5, 2).unwrap());
        assert!(wz_telescoped_check(1, 1, 0).unwrap());
    }

    #[test]
    fn corner_j_equals_k() {
        // The boundary term vanishes at j = k only through the k factor when
        // j = k = 0, and through binom(0, j) when j = k > 0; both in-domain.
        assert!(wz_telescoped_check(2, 0, 0).unwrap());
        assert!(wz_telescoped_check(2, 3, 3).unwrap());
        assert_eq!(neg_g_at_zero(2, 0, 0), Int::zero());
    }

    #[test]
    fn recurrence_reports() {
        assert!(recurrence_checks(1, 8).unwrap().passed);
        assert!(recurrence_checks(4, 12).unwrap().passed);
        assert!(recurrence_checks(1, 2).is_err());
    }

    #[test]
    fn small_sweeps() {
        assert!(sweep_convolution(8, 8).passed);
        assert!(sweep_alternating_sum(6).passed);
        assert!(sweep_certificate(3, 6).passed);
        assert!(sweep_recurrences(3, 8).passed);
    }
}
