//! Multivariate polynomials over exact rationals, and grid interpolation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn integer(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// A polynomial in named variables.
///
/// Variables are kept sorted by name; every exponent vector has one entry per
/// variable. Zero coefficients are never stored.
#[derive(Clone)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            vars: Vec::new(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_in(vars: &[&str]) -> Self {
        let mut vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        vars.sort();
        vars.dedup();
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::constant_in(&[], c)
    }

    pub fn constant_in(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero_in(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn var(name: &str) -> Self {
        MultiPoly {
            vars: vec![name.to_string()],
            terms: BTreeMap::from([(vec![1], Rational::one())]),
        }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs whose
    /// exponents follow the order of `vars` (which need not be sorted).
    pub fn from_terms(
        vars: &[&str],
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero_in(vars);
        if p.vars.len() != vars.len() {
            return Err(Error::Precondition("duplicate variable name".into()));
        }
        let slot: Vec<usize> = vars
            .iter()
            .map(|v| p.vars.iter().position(|w| w == v).unwrap())
            .collect();
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(Error::Precondition(format!(
                    "exponent vector of length {} for {} variables",
                    exps.len(),
                    vars.len()
                )));
            }
            let mut e = vec![0; vars.len()];
            for (i, x) in exps.into_iter().enumerate() {
                e[slot[i]] = x;
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order: graded lexicographic, highest first.
    pub fn terms(&self) -> Vec<(&[u32], &Rational)> {
        let mut out: Vec<(&[u32], &Rational)> =
            self.terms.iter().map(|(e, c)| (e.as_slice(), c)).collect();
        out.sort_by(|a, b| grlex(b.0, a.0));
        out
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs;
    /// unnamed variables have exponent zero.
    pub fn coefficient(&self, monomial: &[(&str, u32)]) -> Rational {
        let mut e = vec![0; self.vars.len()];
        for &(v, x) in monomial {
            match self.vars.iter().position(|w| w == v) {
                Some(i) => e[i] = x,
                None if x == 0 => {}
                None => return Rational::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: &str) -> Option<u32> {
        let i = self.vars.iter().position(|w| w == var);
        self.terms
            .keys()
            .map(|e| i.map_or(0, |i| e[i]))
            .max()
    }

    /// Re-expresses `self` over a superset of its variables.
    fn lift(&self, vars: &[String]) -> MultiPoly {
        let slot: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v).expect("superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut f = vec![0; vars.len()];
                for (i, &x) in e.iter().enumerate() {
                    f[slot[i]] = x;
                }
                (f, c.clone())
            })
            .collect();
        MultiPoly {
            vars: vars.to_vec(),
            terms,
        }
    }

    fn unified(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars = self.vars.clone();
        vars.extend(other.vars.iter().cloned());
        vars.sort();
        vars.dedup();
        (self.lift(&vars), other.lift(&vars))
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        let mut out = MultiPoly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        if c.is_zero() {
            return out;
        }
        for (e, x) in &self.terms {
            out.terms.insert(e.clone(), x * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant_in(
            &self.vars.iter().map(String::as_str).collect::<Vec<_>>(),
            Rational::one(),
        );
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at `point`, which must assign every variable.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        let values: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| point.get(v).ok_or_else(|| Error::MissingVariable(v.clone())))
            .collect::<Result<_>>()?;
        let mut total = Rational::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in values.iter().zip(e) {
                if k > 0 {
                    term *= num_traits::pow((*x).clone(), k as usize);
                }
            }
            total += term;
        }
        Ok(total)
    }

    /// [`evaluate`](Self::evaluate) at an integer point.
    pub fn evaluate_at(&self, point: &[(&str, i64)]) -> Result<Rational> {
        let map = point
            .iter()
            .map(|&(v, x)| (v.to_string(), integer(x)))
            .collect();
        self.evaluate(&map)
    }

    /// Renames variables; names not in `renames` are kept.
    pub fn rename(&self, renames: &[(&str, &str)]) -> Result<MultiPoly> {
        let new_names: Vec<String> = self
            .vars
            .iter()
            .map(|v| {
                renames
                    .iter()
                    .find(|(from, _)| from == v)
                    .map_or_else(|| v.clone(), |(_, to)| to.to_string())
            })
            .collect();
        let names: Vec<&str> = new_names.iter().map(String::as_str).collect();
        MultiPoly::from_terms(&names, self.terms.iter().map(|(e, c)| (e.clone(), c.clone())))
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            vars: self.vars.clone(),
            terms: self
                .terms()
                .into_iter()
                .map(|(e, c)| TermJson {
                    exps: e.to_vec(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &PolyJson) -> Result<MultiPoly> {
        let names: Vec<&str> = json.vars.iter().map(String::as_str).collect();
        let terms = json
            .terms
            .iter()
            .map(|t| {
                let num: BigInt = t
                    .num
                    .parse()
                    .map_err(|_| Error::Precondition(format!("bad numerator `{}`", t.num)))?;
                let den: BigInt = t
                    .den
                    .parse()
                    .map_err(|_| Error::Precondition(format!("bad denominator `{}`", t.den)))?;
                if den.is_zero() {
                    return Err(Error::Precondition("zero denominator".into()));
                }
                Ok((t.exps.clone(), Rational::new(num, den)))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(&names, terms)
    }
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Serialized form: `{vars, terms: [{exps, num, den}]}`, big integers as
/// decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub num: String,
    pub den: String,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.vars.join(","))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let monomial: Vec<String> = self
                .vars
                .iter()
                .zip(e)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if monomial.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{magnitude}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.unified(rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.unified(rhs);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = self.unified(rhs);
        let mut out = MultiPoly {
            vars: a.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// `binomial(n + k - 1, k)`: the number of order-preserving maps from a
/// `k`-chain into an `n`-chain, expanded in `n`.
pub fn binomial_order_poly(k: u32) -> MultiPoly {
    let n = MultiPoly::var("n");
    let mut acc = MultiPoly::constant_in(&["n"], Rational::one());
    let mut factorial = BigInt::one();
    for i in 0..k {
        acc = &acc * &(&n + &MultiPoly::constant(integer(i)));
        factorial *= i + 1;
    }
    acc.scale(&Rational::new(BigInt::one(), factorial))
}

/// One interpolation variable: the grid is `start..=start + degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpVar {
    pub name: String,
    pub degree: u32,
    pub start: i64,
    /// Whether the evaluator is defined past the grid. Variables that only
    /// make sense on the grid itself are checked at grid values instead.
    pub off_grid: bool,
}

impl InterpVar {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        InterpVar {
            name: name.into(),
            degree,
            start: 1,
            off_grid: true,
        }
    }

    pub fn starting_at(mut self, start: i64) -> Self {
        self.start = start;
        self
    }

    pub fn grid_only(mut self) -> Self {
        self.off_grid = false;
        self
    }

    fn grid(&self) -> impl Iterator<Item = i64> + Clone {
        self.start..=self.start + self.degree as i64
    }

    fn checks(&self) -> Vec<i64> {
        let end = self.start + self.degree as i64;
        if self.off_grid {
            vec![end + 1, end + 2]
        } else {
            self.grid().collect()
        }
    }
}

/// The unique polynomial of degree at most `bound` in each variable that
/// agrees with `evaluator` on the grid `∏ {1, …, bound + 1}`.
///
/// The evaluator receives one integer per variable, in the order given.
/// The result is checked against the evaluator at `{bound + 2, bound + 3}`
/// in every variable; disagreement means a bound was too small.
pub fn interpolate<F>(bounds: &[(String, u32)], evaluator: F) -> Result<MultiPoly>
where
    F: FnMut(&[i64]) -> Result<Rational>,
{
    let vars: Vec<InterpVar> = bounds
        .iter()
        .map(|(name, d)| InterpVar::new(name.clone(), *d))
        .collect();
    interpolate_on(&vars, evaluator)
}

/// [`interpolate`] with per-variable grid placement.
pub fn interpolate_on<F>(vars: &[InterpVar], mut evaluator: F) -> Result<MultiPoly>
where
    F: FnMut(&[i64]) -> Result<Rational>,
{
    let mut prefix = Vec::with_capacity(vars.len());
    let poly = newton(vars, &mut prefix, &mut evaluator)?;

    let checks: Vec<Vec<i64>> = vars.iter().map(InterpVar::checks).collect();
    let mut idx = vec![0usize; vars.len()];
    loop {
        let point: Vec<i64> = idx.iter().zip(&checks).map(|(&i, c)| c[i]).collect();
        let expected = evaluator(&point)?;
        let named: Vec<(&str, i64)> = vars
            .iter()
            .zip(&point)
            .map(|(v, &x)| (v.name.as_str(), x))
            .collect();
        let got = poly.evaluate_at(&named)?;
        if got != expected {
            return Err(Error::InconsistentEvaluator {
                point: named.iter().map(|&(v, x)| (v.to_string(), x)).collect(),
                interpolated: got.to_string(),
                expected: expected.to_string(),
            });
        }
        // odometer over the check points
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < checks[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }
    Ok(poly)
}

/// Tensor-product Newton interpolation: divided differences in the first
/// variable, with coefficients that are themselves interpolants in the rest.
fn newton<F>(vars: &[InterpVar], prefix: &mut Vec<i64>, evaluator: &mut F) -> Result<MultiPoly>
where
    F: FnMut(&[i64]) -> Result<Rational>,
{
    let Some((first, rest)) = vars.split_first() else {
        return Ok(MultiPoly::constant(evaluator(prefix)?));
    };
    let nodes: Vec<i64> = first.grid().collect();
    let mut coeffs = Vec::with_capacity(nodes.len());
    for &x in &nodes {
        prefix.push(x);
        coeffs.push(newton(rest, prefix, evaluator)?);
        prefix.pop();
    }
    let d = nodes.len() - 1;
    for j in 1..=d {
        for i in (j..=d).rev() {
            let step = integer(nodes[i] - nodes[i - j]);
            coeffs[i] = (&coeffs[i] - &coeffs[i - 1]).scale(&step.recip());
        }
    }
    let x = MultiPoly::var(&first.name);
    let mut acc = coeffs[d].clone();
    for i in (0..d).rev() {
        let shifted = &x - &MultiPoly::constant(integer(nodes[i]));
        acc = &(&acc * &shifted) + &coeffs[i];
    }
    // keep every interpolation variable declared, even if it drops out
    let mut names: Vec<&str> = vars.iter().map(|v| v.name.as_str()).collect();
    names.sort();
    Ok(&acc + &MultiPoly::zero_in(&names))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &[(&[u32], i64, i64)], vars: &[&str]) -> MultiPoly {
        MultiPoly::from_terms(vars, s.iter().map(|(e, n, d)| (e.to_vec(), rational(*n, *d))))
            .unwrap()
    }

    #[test]
    fn arithmetic_basics() {
        let x = MultiPoly::var("x");
        let one = MultiPoly::constant(integer(1));
        let prod = &(&x + &one) * &(&x - &one);
        assert_eq!(prod, p(&[(&[2], 1, 1), (&[0], -1, 1)], &["x"]));
        assert_eq!(&prod + &MultiPoly::zero(), prod);
        assert_eq!(prod.to_string(), "x^2 - 1");
    }

    #[test]
    fn product_of_binomials_expands() {
        let (e1, e2, a, b) = (
            MultiPoly::var("e1"),
            MultiPoly::var("e2"),
            MultiPoly::var("a"),
            MultiPoly::var("b"),
        );
        let one = MultiPoly::constant(integer(1));
        let lhs = &(&one + &(&e1 * &a)) * &(&one + &(&e2 * &b));
        assert_eq!(lhs.num_terms(), 4);
        assert_eq!(lhs.coefficient(&[("a", 1), ("b", 1), ("e1", 1), ("e2", 1)]), integer(1));
        assert_eq!(lhs.to_string(), "a*b*e1*e2 + a*e1 + b*e2 + 1");
    }

    #[test]
    fn display_is_canonical() {
        let q = p(
            &[(&[2, 2], 1, 4), (&[1, 2], 3, 4), (&[2, 1], 3, 4), (&[0, 0], 1, 1), (&[1, 0], -1, 1)],
            &["a", "b"],
        );
        assert_eq!(q.to_string(), "1/4*a^2*b^2 + 3/4*a^2*b + 3/4*a*b^2 - a + 1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!((-&MultiPoly::var("z")).to_string(), "-z");
    }

    #[test]
    fn evaluation() {
        let pi2 = p(
            &[
                (&[0, 0], 1, 1),
                (&[1, 0], 1, 1),
                (&[0, 1], 1, 1),
                (&[1, 1], 9, 4),
                (&[2, 1], 3, 4),
                (&[1, 2], 3, 4),
                (&[2, 2], 1, 4),
            ],
            &["a", "b"],
        );
        assert_eq!(pi2.evaluate_at(&[("a", 1), ("b", 1)]).unwrap(), integer(7));
        assert_eq!(pi2.evaluate_at(&[("a", 0), ("b", 0)]).unwrap(), pi2.constant_term());
        assert!(matches!(
            pi2.evaluate_at(&[("a", 1)]),
            Err(Error::MissingVariable(v)) if v == "b"
        ));
    }

    #[test]
    fn interpolates_square() {
        let sq = interpolate(&[("n".into(), 2)], |pt| Ok(integer(pt[0] * pt[0]))).unwrap();
        assert_eq!(sq, MultiPoly::var("n").pow(2));
    }

    #[test]
    fn interpolation_detects_small_bound() {
        let err = interpolate(&[("n".into(), 1)], |pt| Ok(integer(pt[0].pow(3)))).unwrap_err();
        assert!(matches!(err, Error::InconsistentEvaluator { .. }));
    }

    #[test]
    fn grid_only_variables() {
        // degree-1 in e on {1, 2} only; the evaluator is quadratic in e
        // elsewhere, so off-grid checks would wrongly fail
        let vars = [InterpVar::new("e", 1).grid_only(), InterpVar::new("n", 1)];
        let p = interpolate_on(&vars, |pt| {
            let (e, n) = (pt[0], pt[1]);
            Ok(integer(e * n - e * (e - 1) / 2))
        })
        .unwrap();
        assert_eq!(p.to_string(), "e*n - e + 1");
    }

    #[test]
    fn binomial_polys() {
        let n = MultiPoly::var("n");
        assert_eq!(binomial_order_poly(1), n);
        assert_eq!(binomial_order_poly(2).to_string(), "1/2*n^2 + 1/2*n");
        assert_eq!(binomial_order_poly(3).to_string(), "1/6*n^3 + 1/2*n^2 + 1/3*n");
    }

    #[test]
    fn json_round_trip() {
        let q = p(&[(&[3, 0], 65, 2), (&[0, 1], -7, 3)], &["b", "a"]);
        let back = MultiPoly::from_json(&q.to_json()).unwrap();
        assert_eq!(back, q);
        assert_eq!(back.vars(), &["a".to_string(), "b".to_string()]);
    }
}
