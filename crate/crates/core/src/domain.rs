//! Index sets that carry a group law, a weight and a dual: full groups,
//! subgroups, quotients and finite products of these.
//!
//! The dual of a subgroup `H < G` is `G^/H^perp`; the dual of `G/H` is
//! `H^perp < G^`. Both identifications use the parent character table, so
//! dualizing twice returns a domain equal to the original.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use crate::group::{root_of_unity, weight_to_f64, GroupSpec, Weight};
use crate::subgroup::{QuotientView, Subgroup};

#[derive(Clone, Debug)]
pub enum Domain {
    Group(GroupSpec),
    Sub(Arc<SubDomain>),
    Quot(Arc<QuotDomain>),
    Product(Arc<ProductDomain>),
}

#[derive(Debug)]
pub struct SubDomain {
    pub subgroup: Subgroup,
    dual: OnceLock<Domain>,
}

#[derive(Debug)]
pub struct QuotDomain {
    pub view: QuotientView,
    dual: OnceLock<Domain>,
}

#[derive(Debug)]
pub struct ProductDomain {
    pub left: Domain,
    pub right: Domain,
    dual: OnceLock<Domain>,
}

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Domain::Group(a), Domain::Group(b)) => a == b,
            (Domain::Sub(a), Domain::Sub(b)) => Arc::ptr_eq(a, b) || a.subgroup == b.subgroup,
            (Domain::Quot(a), Domain::Quot(b)) => {
                Arc::ptr_eq(a, b) || (a.view.subgroup() == b.view.subgroup() && a.view.weight() == b.view.weight())
            }
            (Domain::Product(a), Domain::Product(b)) => Arc::ptr_eq(a, b) || (a.left == b.left && a.right == b.right),
            _ => false,
        }
    }
}

impl From<GroupSpec> for Domain {
    fn from(g: GroupSpec) -> Self {
        Domain::Group(g)
    }
}

impl Domain {
    pub fn subgroup(h: &Subgroup) -> Domain {
        Domain::Sub(Arc::new(SubDomain { subgroup: h.clone(), dual: OnceLock::new() }))
    }

    pub fn quotient(h: &Subgroup) -> Domain {
        Domain::Quot(Arc::new(QuotDomain { view: h.quotient(), dual: OnceLock::new() }))
    }

    pub fn product(left: &Domain, right: &Domain) -> Domain {
        Domain::Product(Arc::new(ProductDomain { left: left.clone(), right: right.clone(), dual: OnceLock::new() }))
    }

    /// The time-frequency plane `D x D^`.
    pub fn phase_space(&self) -> Domain {
        Domain::product(self, &self.dual())
    }

    pub fn len(&self) -> usize {
        match self {
            Domain::Group(g) => g.order(),
            Domain::Sub(s) => s.subgroup.order(),
            Domain::Quot(q) => q.view.len(),
            Domain::Product(p) => p.left.len() * p.right.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weight(&self) -> Weight {
        match self {
            Domain::Group(g) => g.weight(),
            Domain::Sub(s) => s.subgroup.weight(),
            Domain::Quot(q) => q.view.weight(),
            Domain::Product(p) => p.left.weight() * p.right.weight(),
        }
    }

    pub fn weight_f64(&self) -> f64 {
        weight_to_f64(&self.weight())
    }

    pub fn as_group(&self) -> Option<&GroupSpec> {
        match self {
            Domain::Group(g) => Some(g),
            _ => None,
        }
    }

    /// Product components if this is a product domain.
    pub fn split(&self) -> Option<(&Domain, &Domain)> {
        match self {
            Domain::Product(p) => Some((&p.left, &p.right)),
            _ => None,
        }
    }

    pub fn dual(&self) -> Domain {
        match self {
            Domain::Group(g) => Domain::Group(g.dual()),
            Domain::Sub(s) => s
                .dual
                .get_or_init(|| Domain::quotient(&s.subgroup.annihilator()))
                .clone(),
            Domain::Quot(q) => q
                .dual
                .get_or_init(|| Domain::subgroup(&q.view.subgroup().annihilator()))
                .clone(),
            Domain::Product(p) => p
                .dual
                .get_or_init(|| Domain::product(&p.left.dual(), &p.right.dual()))
                .clone(),
        }
    }

    /// Cyclic axis lengths when the domain is a product of full groups; the
    /// Fourier transform is then separable along these axes.
    pub fn axes(&self) -> Option<Vec<usize>> {
        match self {
            Domain::Group(g) => Some(g.factors().to_vec()),
            Domain::Product(p) => {
                let mut a = p.left.axes()?;
                a.extend(p.right.axes()?);
                Some(a)
            }
            _ => None,
        }
    }

    pub fn zero(&self) -> usize {
        // Identity sits at index 0 in every representation: sorted subgroup
        // elements start with 0 and the coset of 0 has representative 0.
        0
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        match self {
            Domain::Group(g) => g.add(a, b),
            Domain::Sub(s) => {
                let h = &s.subgroup;
                let e = h.parent().add(h.elements()[a], h.elements()[b]);
                h.position(e).expect("subgroup closed under addition")
            }
            Domain::Quot(q) => {
                let v = &q.view;
                v.coset_of(v.parent().add(v.coset_reps()[a], v.coset_reps()[b]))
            }
            Domain::Product(p) => {
                let n = p.right.len();
                p.left.add(a / n, b / n) * n + p.right.add(a % n, b % n)
            }
        }
    }

    pub fn neg(&self, a: usize) -> usize {
        match self {
            Domain::Group(g) => g.neg(a),
            Domain::Sub(s) => {
                let h = &s.subgroup;
                h.position(h.parent().neg(h.elements()[a])).expect("subgroup closed under negation")
            }
            Domain::Quot(q) => {
                let v = &q.view;
                v.coset_of(v.parent().neg(v.coset_reps()[a]))
            }
            Domain::Product(p) => {
                let n = p.right.len();
                p.left.neg(a / n) * n + p.right.neg(a % n)
            }
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `[s - x for s in self]`, the index map behind `T_x`.
    pub fn shift_table(&self, x: usize) -> Vec<usize> {
        match self {
            Domain::Group(g) => g.shift_table(x),
            Domain::Product(p) => {
                let n = p.right.len();
                let l = p.left.shift_table(x / n);
                let r = p.right.shift_table(x % n);
                l.iter().flat_map(|&a| r.iter().map(move |&b| a * n + b)).collect()
            }
            _ => {
                let nx = self.neg(x);
                (0..self.len()).map(|s| self.add(s, nx)).collect()
            }
        }
    }

    /// `[omega(s) for s in self]`, equal entry by entry to [`Domain::pairing`].
    pub fn character_row(&self, omega: usize) -> Vec<Complex64> {
        match self {
            Domain::Group(g) => g.character_row(omega),
            Domain::Product(p) => {
                let m = p.right.dual().len();
                let l = p.left.character_row(omega / m);
                let r = p.right.character_row(omega % m);
                l.iter().flat_map(|&a| r.iter().map(move |&b| a * b)).collect()
            }
            _ => (0..self.len()).map(|s| self.pairing(omega, s)).collect(),
        }
    }

    /// `omega(x)` for `omega` indexing `self.dual()` and `x` indexing `self`.
    pub fn pairing(&self, omega: usize, x: usize) -> Complex64 {
        match self {
            Domain::Group(g) => g.character(omega, x),
            Domain::Sub(s) => {
                // Characters of H are restrictions of representatives of G^/H^perp.
                let h = &s.subgroup;
                let dual = self.dual();
                let Domain::Quot(q) = &dual else { unreachable!() };
                let rep = q.view.coset_reps()[omega];
                let g = h.parent();
                root_of_unity(g.phase(rep, h.elements()[x]), g.lcm())
            }
            Domain::Quot(q) => {
                let dual = self.dual();
                let Domain::Sub(s) = &dual else { unreachable!() };
                let gamma = s.subgroup.elements()[omega];
                let g = q.view.parent();
                root_of_unity(g.phase(gamma, q.view.coset_reps()[x]), g.lcm())
            }
            Domain::Product(p) => {
                let n = p.right.len();
                let m = p.right.dual().len();
                p.left.pairing(omega / m, x / n) * p.right.pairing(omega % m, x % n)
            }
        }
    }

    /// Full character table `table[omega * len + x] = omega(x)`.
    pub fn character_table(&self) -> Vec<Complex64> {
        let n = self.len();
        let m = self.dual().len();
        let mut t = Vec::with_capacity(n * m);
        for w in 0..m {
            for x in 0..n {
                t.push(self.pairing(w, x));
            }
        }
        t
    }

    pub fn describe(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Group(g) => write!(f, "{g}"),
            Domain::Sub(s) => write!(f, "subgroup {} (|H|={})", s.subgroup, s.subgroup.order()),
            Domain::Quot(q) => write!(f, "quotient by {} ({} cosets)", q.view.subgroup(), q.view.len()),
            Domain::Product(p) => write!(f, "({}) x ({})", p.left, p.right),
        }
    }
}
