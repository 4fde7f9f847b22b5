//! Subgroups, quotients, annihilators and the derived Haar weights.

use std::collections::VecDeque;
use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec, Weight};

/// An enumerated subgroup `H` of a parent group with its own weight `w_H`.
///
/// Equality ignores the generator list: two subgroups are equal when they have
/// the same parent, the same elements and the same weight.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: GroupSpec,
    elements: Vec<usize>,
    generators: Vec<GroupElement>,
    weight: Weight,
    member: Vec<bool>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.elements == other.elements && self.weight == other.weight
    }
}

/// Coset structure of `G/H`. Representatives are the lexicographically minimal
/// element of each coset, listed in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientView {
    parent: GroupSpec,
    subgroup: Subgroup,
    coset_reps: Vec<usize>,
    coset_of: Vec<usize>,
    weight: Weight,
}

/// The six weights attached to a pair `(G, H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureSystem {
    pub g: Weight,
    pub h: Weight,
    pub g_mod_h: Weight,
    pub g_hat: Weight,
    pub h_perp: Weight,
    pub g_hat_mod_h_perp: Weight,
}

impl Subgroup {
    /// Breadth-first closure of `gens` under addition.
    pub fn generated(parent: &GroupSpec, gens: &[GroupElement], weight: Weight) -> Result<Self> {
        let gen_idx = gens
            .iter()
            .map(|g| parent.index_of_element(g))
            .collect::<Result<Vec<_>>>()?;
        let mut member = vec![false; parent.order()];
        let mut elements = vec![0usize];
        member[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for &g in &gen_idx {
                let b = parent.add(a, g);
                if !member[b] {
                    member[b] = true;
                    elements.push(b);
                    queue.push_back(b);
                }
            }
        }
        elements.sort_unstable();
        Self::assemble(parent, elements, gens.to_vec(), weight, member)
    }

    /// Builds a subgroup from an explicit element set; closure is verified.
    pub fn from_elements(parent: &GroupSpec, elements: &[usize], weight: Weight) -> Result<Self> {
        let mut member = vec![false; parent.order()];
        for &e in elements {
            if e >= parent.order() {
                return Err(Error::InvalidArgument(format!("element index {e} outside {parent}")));
            }
            member[e] = true;
        }
        let mut elements: Vec<usize> = (0..parent.order()).filter(|&i| member[i]).collect();
        elements.dedup();
        let generators = greedy_generators(parent, &elements);
        Self::assemble(parent, elements, generators, weight, member)
    }

    fn assemble(
        parent: &GroupSpec,
        elements: Vec<usize>,
        generators: Vec<GroupElement>,
        weight: Weight,
        member: Vec<bool>,
    ) -> Result<Self> {
        if weight <= Ratio::from_integer(0) {
            return Err(Error::InvalidArgument("subgroup weight must be positive".into()));
        }
        if !member[0] {
            return Err(Error::InvalidArgument("subgroup must contain the identity".into()));
        }
        for &a in &elements {
            if !member[parent.neg(a)] {
                return Err(Error::InvalidArgument("element set is not closed under negation".into()));
            }
            for &b in &elements {
                if !member[parent.add(a, b)] {
                    return Err(Error::InvalidArgument("element set is not closed under addition".into()));
                }
            }
        }
        debug_assert_eq!(parent.order() % elements.len(), 0);
        Ok(Subgroup { parent: parent.clone(), elements, generators, weight, member })
    }

    pub fn whole(parent: &GroupSpec, weight: Weight) -> Self {
        let elements: Vec<usize> = (0..parent.order()).collect();
        Self::from_elements(parent, &elements, weight).expect("whole group is a subgroup")
    }

    pub fn trivial(parent: &GroupSpec, weight: Weight) -> Self {
        Self::generated(parent, &[], weight).expect("trivial subgroup")
    }

    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn weight_f64(&self) -> f64 {
        crate::group::weight_to_f64(&self.weight)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.elements.len()
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.member[idx]
    }

    /// Position of a parent index inside the sorted element list.
    pub fn position(&self, idx: usize) -> Option<usize> {
        if self.member[idx] {
            self.elements.binary_search(&idx).ok()
        } else {
            None
        }
    }

    pub fn with_weight(&self, weight: Weight) -> Result<Self> {
        let mut s = self.clone();
        if weight <= Ratio::from_integer(0) {
            return Err(Error::InvalidArgument("subgroup weight must be positive".into()));
        }
        s.weight = weight;
        Ok(s)
    }

    /// `H^perp` inside the dual group, carrying the weight `w_{H^perp}`.
    pub fn annihilator(&self) -> Subgroup {
        let dual = self.parent.dual();
        let probes = if self.generators.is_empty() && self.elements.len() > 1 {
            self.elements.clone()
        } else {
            self.generators.iter().map(|g| self.parent.index_of(&g.coords)).collect()
        };
        let elements: Vec<usize> = (0..dual.order())
            .filter(|&gamma| probes.iter().all(|&h| self.parent.phase(gamma, h) == 0))
            .collect();
        let w = derive_measures(self).h_perp;
        Subgroup::from_elements(&dual, &elements, w).expect("annihilator is a subgroup")
    }

    pub fn quotient(&self) -> QuotientView {
        let n = self.parent.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut coset_reps = Vec::with_capacity(self.index());
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = coset_reps.len();
            coset_reps.push(x);
            for &h in &self.elements {
                coset_of[self.parent.add(x, h)] = c;
            }
        }
        QuotientView {
            parent: self.parent.clone(),
            subgroup: self.clone(),
            coset_reps,
            coset_of,
            weight: self.parent.weight() / self.weight,
        }
    }
}

fn greedy_generators(parent: &GroupSpec, elements: &[usize]) -> Vec<GroupElement> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![false; parent.order()];
    span[0] = true;
    let mut span_list = vec![0usize];
    for &e in elements {
        if span[e] {
            continue;
        }
        gens.push(e);
        // Re-close the span under the enlarged generator set.
        let mut queue: VecDeque<usize> = span_list.iter().copied().collect();
        while let Some(a) = queue.pop_front() {
            for &g in &gens {
                let b = parent.add(a, g);
                if !span[b] {
                    span[b] = true;
                    span_list.push(b);
                    queue.push_back(b);
                }
            }
        }
    }
    gens.into_iter().map(|g| parent.element(g)).collect()
}

impl QuotientView {
    pub fn parent(&self) -> &GroupSpec {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    pub fn coset_of(&self, idx: usize) -> usize {
        self.coset_of[idx]
    }

    pub fn weight(&self) -> Weight {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coset_reps.is_empty()
    }
}

/// Derived weights for `(G, H)`; `w_G^ = w_{H^perp} w_{G^/H^perp}` holds exactly.
pub fn derive_measures(h: &Subgroup) -> MeasureSystem {
    let one = Ratio::from_integer(1);
    let g = h.parent.weight();
    let order_g = Ratio::from_integer(h.parent.order() as i64);
    let order_h = Ratio::from_integer(h.order() as i64);
    let index = Ratio::from_integer(h.index() as i64);
    let g_mod_h = g / h.weight;
    MeasureSystem {
        g,
        h: h.weight,
        g_mod_h,
        g_hat: one / (order_g * g),
        h_perp: one / (index * g_mod_h),
        g_hat_mod_h_perp: one / (order_h * h.weight),
    }
}

/// Every subgroup of `g`, each with weight `weight`, ordered by size then elements.
pub fn all_subgroups(g: &GroupSpec, weight: Weight) -> Vec<Subgroup> {
    let mut found: Vec<Vec<usize>> = vec![vec![0]];
    let mut queue = VecDeque::from([vec![0usize]]);
    while let Some(elems) = queue.pop_front() {
        let mut member = vec![false; g.order()];
        for &e in &elems {
            member[e] = true;
        }
        for x in 0..g.order() {
            if member[x] {
                continue;
            }
            let mut gens: Vec<GroupElement> = greedy_generators(g, &elems);
            gens.push(g.element(x));
            let joined = Subgroup::generated(g, &gens, weight).expect("valid generators");
            let key = joined.elements.clone();
            if !found.contains(&key) {
                found.push(key.clone());
                queue.push_back(key);
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .map(|e| Subgroup::from_elements(g, &e, weight).expect("closed set"))
        .collect()
}

/// Parses comma-separated generators with colon-separated coordinates,
/// e.g. `"2"` on `Z_6` or `"1:2"` on `Z_2 x Z_4`. An empty string gives `{0}`.
pub fn parse_generators(g: &GroupSpec, s: &str) -> Result<Vec<GroupElement>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|item| {
            let coords = item
                .split(':')
                .map(|c| c.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad coordinate {c:?}"))))
                .collect::<Result<Vec<_>>>()?;
            GroupElement::new(g, &coords).map_err(|e| Error::Parse(e.to_string()))
        })
        .collect()
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| g.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":"))
            .collect();
        write!(f, "<{}> in {}", gens.join(","), self.parent)
    }
}
