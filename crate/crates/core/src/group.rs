//! Finite abelian groups `Z_{n1} x ... x Z_{nk}` with an exact Haar weight.
//!
//! Elements are addressed by a flat index in row-major order (last factor
//! varies fastest). The dual group uses the same factor list and the pairing
//! `exp(2 pi i sum_j x_j w_j / n_j)`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact positive rational measure weight per point.
pub type Weight = Ratio<i64>;

/// Converts an exact weight to a float for use inside complex sums.
pub fn weight_to_f64(w: &Weight) -> f64 {
    *w.numer() as f64 / *w.denom() as f64
}

/// `exp(2 pi i k / n)` with exact values at multiples of a quarter turn.
pub fn root_of_unity(k: usize, n: usize) -> Complex64 {
    let k = k % n;
    if (4 * k) % n == 0 {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    // Reduce to |angle| <= pi before evaluating.
    let signed = if 2 * k > n { k as f64 - n as f64 } else { k as f64 };
    let theta = 2.0 * std::f64::consts::PI * signed / n as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// A finite abelian group as a product of cyclic factors with Haar weight `w_G`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<usize>,
    weight: Weight,
    lcm: usize,
}

/// Coordinates of a group (or dual group) element, each reduced mod its factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub coords: Vec<usize>,
}

impl GroupElement {
    /// Reduces each coordinate modulo the matching factor of `group`.
    pub fn new(group: &GroupSpec, coords: &[i64]) -> Result<Self> {
        if coords.len() != group.factors.len() {
            return Err(Error::InvalidArgument(format!(
                "element has {} coordinates, group has {} factors",
                coords.len(),
                group.factors.len()
            )));
        }
        let coords = coords
            .iter()
            .zip(&group.factors)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as usize)
            .collect();
        Ok(GroupElement { coords })
    }
}

/// A point `(x, omega)` of the time-frequency plane, stored as flat indices
/// into the group and its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhasePoint {
    pub x: usize,
    pub omega: usize,
}

impl PhasePoint {
    pub fn new(x: usize, omega: usize) -> Self {
        PhasePoint { x, omega }
    }
}

impl GroupSpec {
    pub fn new(factors: Vec<usize>, weight: Weight) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup("factor list is empty".into()));
        }
        if factors.iter().any(|&n| n == 0) {
            return Err(Error::InvalidGroup("cyclic factors must be >= 1".into()));
        }
        if weight <= Ratio::from_integer(0) {
            return Err(Error::InvalidGroup("weight must be positive".into()));
        }
        let lcm = factors.iter().fold(1usize, |acc, &n| acc.lcm(&n));
        Ok(GroupSpec { factors, weight, lcm })
    }

    /// Counting measure (`w_G = 1`).
    pub fn counting(factors: &[usize]) -> Result<Self> {
        Self::new(factors.to_vec(), Ratio::from_integer(1))
    }

    /// Normalized measure (`w_G = 1/|G|`).
    pub fn normalized(factors: &[usize]) -> Result<Self> {
        let order: usize = factors.iter().product();
        Self::new(factors.to_vec(), Ratio::new(1, order.max(1) as i64))
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn weight_f64(&self) -> f64 {
        weight_to_f64(&self.weight)
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product()
    }

    pub fn with_weight(&self, weight: Weight) -> Result<Self> {
        Self::new(self.factors.clone(), weight)
    }

    /// Same factors, weight `1/(|G| w_G)`.
    pub fn dual(&self) -> GroupSpec {
        let w = Ratio::from_integer(1) / (self.weight * Ratio::from_integer(self.order() as i64));
        GroupSpec { factors: self.factors.clone(), weight: w, lcm: self.lcm }
    }

    /// Direct product with concatenated factors and weight `w_1 w_2`.
    pub fn product(&self, other: &GroupSpec) -> GroupSpec {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        GroupSpec::new(factors, self.weight * other.weight).expect("product of valid groups")
    }

    pub fn coords(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for j in (0..self.factors.len()).rev() {
            out[j] = idx % self.factors[j];
            idx /= self.factors[j];
        }
        out
    }

    pub fn index_of(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&c, &n)| acc * n + c % n)
    }

    pub fn element(&self, idx: usize) -> GroupElement {
        GroupElement { coords: self.coords(idx) }
    }

    pub fn index_of_element(&self, e: &GroupElement) -> Result<usize> {
        self.check_element(e)?;
        Ok(self.index_of(&e.coords))
    }

    fn check_element(&self, e: &GroupElement) -> Result<()> {
        if e.coords.len() != self.factors.len()
            || e.coords.iter().zip(&self.factors).any(|(&c, &n)| c >= n)
        {
            return Err(Error::InvalidArgument(format!(
                "element {:?} does not belong to {}",
                e.coords, self
            )));
        }
        Ok(())
    }

    pub fn add(&self, mut a: usize, mut b: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        for &n in self.factors.iter().rev() {
            let c = (a % n + b % n) % n;
            out += c * stride;
            stride *= n;
            a /= n;
            b /= n;
        }
        out
    }

    pub fn neg(&self, mut a: usize) -> usize {
        let mut out = 0;
        let mut stride = 1;
        for &n in self.factors.iter().rev() {
            let c = (n - a % n) % n;
            out += c * stride;
            stride *= n;
            a /= n;
        }
        out
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k`-fold sum of `a`.
    pub fn scale(&self, k: usize, a: usize) -> usize {
        let c: Vec<usize> = self.coords(a).iter().zip(&self.factors).map(|(&x, &n)| (k * x) % n).collect();
        self.index_of(&c)
    }

    /// Phase numerator `p` with `omega(x) = exp(2 pi i p / L)`, `L = lcm(n_j)`.
    pub fn phase(&self, omega: usize, x: usize) -> usize {
        let mut a = omega;
        let mut b = x;
        let mut acc = 0usize;
        for &n in self.factors.iter().rev() {
            let prod = (a % n) * (b % n) % n;
            acc = (acc + prod * (self.lcm / n)) % self.lcm;
            a /= n;
            b /= n;
        }
        acc
    }

    pub fn lcm(&self) -> usize {
        self.lcm
    }

    /// `[s - x for s in G]`, walking the coordinates of `s` as an odometer.
    pub fn shift_table(&self, x: usize) -> Vec<usize> {
        let r = self.factors.len();
        let mut strides = vec![1usize; r];
        for j in (0..r.saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * self.factors[j + 1];
        }
        let xc = self.coords(x);
        // c = coordinates of s - x, starting from s = 0.
        let mut c: Vec<usize> = xc.iter().zip(&self.factors).map(|(&a, &n)| (n - a) % n).collect();
        let mut s = vec![0usize; r];
        let mut idx = self.index_of(&c);
        let order = self.order();
        let mut out = Vec::with_capacity(order);
        for _ in 0..order {
            out.push(idx);
            for j in (0..r).rev() {
                let n = self.factors[j];
                if c[j] + 1 == n {
                    c[j] = 0;
                    idx -= (n - 1) * strides[j];
                } else {
                    c[j] += 1;
                    idx += strides[j];
                }
                s[j] += 1;
                if s[j] < n {
                    break;
                }
                s[j] = 0;
            }
        }
        out
    }

    /// `[omega(s) for s in G]`, equal entry by entry to [`GroupSpec::character`].
    pub fn character_row(&self, omega: usize) -> Vec<Complex64> {
        let r = self.factors.len();
        let l = self.lcm;
        let roots: Vec<Complex64> = (0..l).map(|k| root_of_unity(k, l)).collect();
        let oc = self.coords(omega);
        // p[j] = omega_j s_j mod n_j, maintained incrementally.
        let mut p = vec![0usize; r];
        let mut s = vec![0usize; r];
        let order = self.order();
        let mut out = Vec::with_capacity(order);
        for _ in 0..order {
            let acc = (0..r).fold(0usize, |acc, j| (acc + p[j] * (l / self.factors[j])) % l);
            out.push(roots[acc]);
            for j in (0..r).rev() {
                let n = self.factors[j];
                p[j] = (p[j] + oc[j]) % n;
                s[j] += 1;
                if s[j] < n {
                    break;
                }
                s[j] = 0;
                p[j] = 0;
            }
        }
        out
    }

    /// Character value `omega(x)` for flat indices.
    pub fn character(&self, omega: usize, x: usize) -> Complex64 {
        root_of_unity(self.phase(omega, x), self.lcm)
    }
}

/// Character value `omega(x)` for explicit elements of `G^` and `G`.
pub fn character_value(group: &GroupSpec, omega: &GroupElement, x: &GroupElement) -> Result<Complex64> {
    group.check_element(omega)?;
    group.check_element(x)?;
    Ok(group.character(group.index_of(&omega.coords), group.index_of(&x.coords)))
}

/// Exact dual of `g`.
pub fn dual_group(g: &GroupSpec) -> GroupSpec {
    g.dual()
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.factors.iter().map(|n| n.to_string()).collect();
        write!(f, "{}", body.join("x"))?;
        if self.weight != Ratio::from_integer(1) {
            write!(f, "@{}/{}", self.weight.numer(), self.weight.denom())?;
        }
        Ok(())
    }
}

/// Parses `"p/q"` or `"p"` into an exact positive weight.
pub fn parse_weight(s: &str) -> Result<Weight> {
    let s = s.trim();
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: i64 = p.parse().map_err(|_| Error::Parse(format!("bad weight numerator in {s:?}")))?;
    let q: i64 = q.parse().map_err(|_| Error::Parse(format!("bad weight denominator in {s:?}")))?;
    if p <= 0 || q <= 0 {
        return Err(Error::Parse(format!("weight must be a positive rational, got {s:?}")));
    }
    Ok(Ratio::new(p, q))
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Syntax `n1xn2x...xnk[@p/q]`, e.g. `"2x3x4"` or `"6@1/6"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, weight) = match s.split_once('@') {
            Some((b, w)) => (b, parse_weight(w)?),
            None => (s, Ratio::from_integer(1)),
        };
        if body.is_empty() {
            return Err(Error::Parse("empty group spec".into()));
        }
        let factors = body
            .split('x')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad cyclic factor {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        GroupSpec::new(factors, weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn dual_weights() {
        let z4 = GroupSpec::counting(&[4]).unwrap();
        assert_eq!(z4.dual().weight(), Ratio::new(1, 4));
        let z6 = GroupSpec::normalized(&[6]).unwrap();
        assert_eq!(z6.dual().weight(), Ratio::from_integer(1));
        let z23 = GroupSpec::counting(&[2, 3]).unwrap();
        assert_eq!(z23.dual().weight(), Ratio::new(1, 6));
        assert_eq!(z23.dual().dual(), z23);
    }

    #[test]
    fn character_examples() {
        let z4 = GroupSpec::counting(&[4]).unwrap();
        let one = GroupElement::new(&z4, &[1]).unwrap();
        let zero = GroupElement::new(&z4, &[0]).unwrap();
        assert_eq!(character_value(&z4, &one, &one).unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(character_value(&z4, &zero, &one).unwrap(), Complex64::new(1.0, 0.0));
        let z22 = GroupSpec::counting(&[2, 2]).unwrap();
        let e = GroupElement::new(&z22, &[1, 1]).unwrap();
        assert_eq!(character_value(&z22, &e, &e).unwrap(), Complex64::new(1.0, 0.0));
        let z3 = GroupSpec::counting(&[3]).unwrap();
        let bad = GroupElement { coords: vec![1, 0] };
        assert!(character_value(&z3, &bad, &bad).is_err());
    }

    #[test]
    fn parse_and_display() {
        let g: GroupSpec = "2x3x4".parse().unwrap();
        assert_eq!(g.factors(), &[2, 3, 4]);
        assert_eq!(g.order(), 24);
        let h: GroupSpec = "6@1/6".parse().unwrap();
        assert_eq!(h.weight(), Ratio::new(1, 6));
        assert_eq!(h.to_string(), "6@1/6");
        assert!("2x0".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
        assert!("4@-1/2".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn row_major_indexing() {
        let g = GroupSpec::counting(&[2, 3]).unwrap();
        assert_eq!(g.coords(1), vec![0, 1]);
        assert_eq!(g.coords(3), vec![1, 0]);
        assert_eq!(g.index_of(&[1, 2]), 5);
    }

    fn small_group() -> impl Strategy<Value = GroupSpec> {
        prop::collection::vec(1usize..7, 1..4).prop_map(|f| GroupSpec::counting(&f).unwrap())
    }

    proptest! {
        #[test]
        fn character_is_multiplicative(g in small_group(), a in 0usize..1000, b in 0usize..1000, w in 0usize..1000) {
            let n = g.order();
            let (a, b, w) = (a % n, b % n, w % n);
            let lhs = g.character(w, g.add(a, b));
            let rhs = g.character(w, a) * g.character(w, b);
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert!((lhs.norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn group_law(g in small_group(), a in 0usize..1000, b in 0usize..1000) {
            let n = g.order();
            let (a, b) = (a % n, b % n);
            prop_assert_eq!(g.add(a, g.neg(a)), 0);
            prop_assert_eq!(g.sub(g.add(a, b), b), a);
            prop_assert_eq!(g.add(a, b), g.add(b, a));
        }

        #[test]
        fn dual_is_involutive(f in prop::collection::vec(1usize..9, 1..4), p in 1i64..20, q in 1i64..20) {
            let g = GroupSpec::new(f, Ratio::new(p, q)).unwrap();
            prop_assert_eq!(g.dual().dual(), g);
        }
    }
}
