use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ConstructionError;

/// Denominator cap used when choosing the default area constant `q`.
pub const Q_DENOMINATOR_CAP: u64 = 1_000_000;

/// Inputs of the construction: alphabet size `n`, the rational `lambda1`, and
/// the exponent scale `N` (so that `m_i = N |w_i| + i`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionParams {
    n: u32,
    lambda1: BigRational,
    big_n: u64,
    q_override: Option<BigRational>,
}

impl ConstructionParams {
    pub fn new(n: u32, lambda1: BigRational, big_n: u64) -> Result<Self, ConstructionError> {
        if n == 0 {
            return Err(ConstructionError::MalformedParams("n must be positive".into()));
        }
        if !lambda1.is_positive() || lambda1 >= BigRational::one() {
            return Err(ConstructionError::MalformedParams(format!(
                "lambda1 = {lambda1} must lie strictly between 0 and 1"
            )));
        }
        if big_n == 0 {
            return Err(ConstructionError::MalformedParams("N must be positive".into()));
        }
        Ok(Self { n, lambda1, big_n, q_override: None })
    }

    /// Convenience for `new(n, parse_rational(lambda1), big_n)`.
    pub fn parse(n: u32, lambda1: &str, big_n: u64) -> Result<Self, ConstructionError> {
        Self::new(n, parse_rational(lambda1)?, big_n)
    }

    /// Use `q` instead of the default area constant.
    pub fn with_q(mut self, q: BigRational) -> Result<Self, ConstructionError> {
        if !q.is_positive() {
            return Err(ConstructionError::MalformedParams(format!("q = {q} must be positive")));
        }
        self.q_override = Some(q);
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn lambda1(&self) -> &BigRational {
        &self.lambda1
    }

    pub fn big_n(&self) -> u64 {
        self.big_n
    }

    pub fn lambda2(&self) -> BigRational {
        ratio(2, self.n as i64)
    }

    pub fn mu(&self) -> BigRational {
        &self.lambda1 + self.lambda2() * int(5)
    }

    /// `1 / (1 - 2 mu)` when `mu < 1/2`.
    pub fn isoperimetric_slope(&self) -> Option<BigRational> {
        let d = BigRational::one() - self.mu() * int(2);
        d.is_positive().then(|| d.recip())
    }

    /// Area constant used by the decision procedures. Defaults to the least
    /// rational at or above `1/(1-2mu)` with denominator at most
    /// [`Q_DENOMINATOR_CAP`]; falls back to 1 when `mu >= 1/2`.
    pub fn q(&self) -> BigRational {
        if let Some(q) = &self.q_override {
            return q.clone();
        }
        match self.isoperimetric_slope() {
            Some(s) => least_upper_with_denominator(&s, Q_DENOMINATOR_CAP),
            None => BigRational::one(),
        }
    }

    /// True when `f(k) = q k` is guaranteed to be an isoperimetric function,
    /// so a negative bounded-diagram answer is a certified negative.
    pub fn area_bound_certified(&self) -> bool {
        self.isoperimetric_slope().is_some_and(|s| self.q() >= s)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_params(self)
    }
}

/// One exactly evaluated inequality `lhs <relation> rhs`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub statement: &'static str,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub holds: bool,
    pub required: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub n: u32,
    pub lambda1: String,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub lambda2: String,
    pub mu: String,
    pub q: String,
    pub checks: Vec<Check>,
    pub theorem_scale: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().filter(|c| c.required).all(|c| c.holds)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn validate_params(p: &ConstructionParams) -> ValidationReport {
    let one = BigRational::one();
    let n = int(p.n as i64);
    let l1 = p.lambda1.clone();
    let l2 = p.lambda2();
    let mu = p.mu();
    let half_gap = &one - &l1;

    let mut checks = Vec::new();
    let mut push = |name, statement, lhs: BigRational, relation, rhs: BigRational, required| {
        let holds = match relation {
            "<=" => lhs <= rhs,
            "<" => lhs < rhs,
            ">=" => lhs >= rhs,
            _ => unreachable!(),
        };
        checks.push(Check {
            name,
            statement,
            lhs: lhs.to_string(),
            relation,
            rhs: rhs.to_string(),
            holds,
            required,
        });
        holds
    };

    let lhs = (int(4) + &n * int(2) * &l1 / &half_gap) * &l1;
    push("lambda1_bound", "(4 + 2n*l1/(1-l1)) * l1 <= 1/n", lhs, "<=", n.recip(), true);
    push("exponent_scale", "l1 * n * N >= 1", &l1 * &n * int(p.big_n as i64), ">=", one.clone(), true);
    push("area_constant", "2*l1 + 13*l2 < 1", &l1 * int(2) + &l2 * int(13), "<", one.clone(), true);
    push("mu_below_half", "mu = l1 + 5*l2 < 1/2", mu.clone(), "<", ratio(1, 2), true);
    let lhs = &one - &mu * int(2) - &l1 * int(2) - &n * int(2) * &l1 * &l1 / &half_gap;
    let margin = push(
        "selection_margin",
        "1 - 2mu - 2l1 - 2n*l1^2/(1-l1) >= 1 - 21/n",
        lhs,
        ">=",
        &one - int(21) / &n,
        false,
    );

    ValidationReport {
        n: p.n,
        lambda1: p.lambda1.to_string(),
        big_n: p.big_n,
        lambda2: l2.to_string(),
        mu: mu.to_string(),
        q: p.q().to_string(),
        checks,
        theorem_scale: p.n >= 63 && margin,
    }
}

/// Parse `a/b` or an integer into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational, ConstructionError> {
    let bad = || ConstructionError::MalformedRational(text.to_string());
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Least rational `>= x` whose denominator does not exceed `cap`
/// (the upper Farey neighbour), found by a batched Stern–Brocot descent.
pub fn least_upper_with_denominator(x: &BigRational, cap: u64) -> BigRational {
    let cap = BigInt::from(cap);
    if x.denom() <= &cap {
        return x.clone();
    }
    let floor = x.floor();
    let frac = x - &floor;
    // Bounds lo = a/b < frac < hi = c/d within [0, 1].
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    let (mut c, mut d) = (BigInt::one(), BigInt::one());
    let (p, q) = (frac.numer().clone(), frac.denom().clone());
    loop {
        // Move hi toward frac: hi_k = (c + k a)/(d + k b) while hi_k > frac.
        // (c + k a) q > p (d + k b)  <=>  k (p b - a q) < c q - p d
        let gap_hi = &c * &q - &p * &d;
        let step_hi = &p * &b - &a * &q;
        let mut k = (&gap_hi - BigInt::one()).div_floor(&step_hi);
        if !b.is_zero() {
            k = k.min((&cap - &d).div_floor(&b));
        }
        if k.is_positive() {
            c += &k * &a;
            d += &k * &b;
        }
        // Move lo toward frac: lo_k = (a + k c)/(b + k d) while lo_k < frac.
        let gap_lo = &p * &b - &a * &q;
        let step_lo = &c * &q - &p * &d;
        let mut k = (&gap_lo - BigInt::one()).div_floor(&step_lo);
        k = k.min((&cap - &b).div_floor(&d));
        if k.is_positive() {
            a += &k * &c;
            b += &k * &d;
        } else if &b + &d > cap {
            break;
        }
        if &b + &d > cap {
            break;
        }
    }
    BigRational::from_integer(floor.to_integer()) + BigRational::new(c, d)
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

impl fmt::Display for ConstructionParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} lambda1={} N={}", self.n, self.lambda1, self.big_n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        ratio(a, b)
    }

    #[test]
    fn theorem_scale_instance_passes() {
        let p = ConstructionParams::parse(63, "1/315", 315).unwrap();
        let rep = p.validate();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.theorem_scale);
        let area = rep.check("area_constant").unwrap();
        assert_eq!(area.lhs, "44/105"); // 2/315 + 26/63 = 132/315
        assert_eq!(p.mu(), r(17, 105));
        assert_eq!(p.q(), r(105, 71));
        assert!(p.area_bound_certified());
    }

    #[test]
    fn toy_instance_is_not_theorem_scale() {
        let p = ConstructionParams::parse(4, "1/20", 5).unwrap();
        assert!(!p.validate().theorem_scale);
        let toy = ConstructionParams::parse(3, "1/15", 2).unwrap();
        assert!(toy.validate().check("lambda1_bound").unwrap().holds);
        assert!(!toy.validate().passed());
        assert_eq!(toy.q(), BigRational::one());
        assert!(!toy.area_bound_certified());
    }

    #[test]
    fn large_lambda_fails_first_bound() {
        let p = ConstructionParams::parse(63, "1/2", 315).unwrap();
        assert!(!p.validate().check("lambda1_bound").unwrap().holds);
    }

    #[test]
    fn malformed_inputs() {
        assert!(ConstructionParams::parse(0, "1/5", 1).is_err());
        assert!(ConstructionParams::parse(3, "1", 1).is_err());
        assert!(ConstructionParams::parse(3, "-1/5", 1).is_err());
        assert!(ConstructionParams::parse(3, "1/0", 1).is_err());
        assert!(ConstructionParams::parse(3, "abc", 1).is_err());
        assert!(ConstructionParams::parse(3, "1/5", 0).is_err());
    }

    fn brute_least_upper(x: &BigRational, cap: i64) -> BigRational {
        let mut best: Option<BigRational> = None;
        for d in 1..=cap {
            let num = (x * int(d)).ceil();
            let cand = num / int(d);
            if best.as_ref().is_none_or(|b| &cand < b) {
                best = Some(cand);
            }
        }
        best.unwrap()
    }

    #[test]
    fn least_upper_matches_brute_force() {
        for (a, b) in [(105, 71), (355, 113), (1, 997), (996, 997), (7919, 104729), (-3, 1009), (22, 7)] {
            let x = r(a, b);
            for cap in [1i64, 2, 5, 10, 60, 100] {
                assert_eq!(
                    least_upper_with_denominator(&x, cap as u64),
                    brute_least_upper(&x, cap),
                    "x = {x}, cap = {cap}"
                );
            }
        }
    }
}
