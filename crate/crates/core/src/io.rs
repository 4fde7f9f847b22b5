//! JSON exchange formats.
//!
//! Signal: `{"group":{"factors":[..],"weight":"p/q"},"values":[[re,im],..]}` in
//! row-major (last factor fastest) order. Functionals add `"kind"`. Kernels are
//! signals on the concatenated product group with `"split"` (number of input
//! factors) and `"input_weight"`, since the product alone does not determine
//! the factor weights. Operators store the matrix on the delta basis, one row
//! per output point.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::domain::Domain;
use crate::duality::{Functional, FunctionalKind};
use crate::error::{Error, Result};
use crate::group::{parse_weight, GroupSpec, Weight};
use crate::kernel::KernelFunctional;
use crate::operators::Operator;
use crate::signal::Signal;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupJson {
    pub factors: Vec<usize>,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignalJson {
    pub group: GroupJson,
    pub values: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<FunctionalKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_weight: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorJson {
    pub input: GroupJson,
    pub output: GroupJson,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

fn weight_string(w: Weight) -> String {
    format!("{}/{}", w.numer(), w.denom())
}

pub fn group_json(g: &GroupSpec) -> GroupJson {
    GroupJson { factors: g.factors().to_vec(), weight: weight_string(g.weight()) }
}

pub fn group_from_json(g: &GroupJson) -> Result<GroupSpec> {
    GroupSpec::new(g.factors.clone(), parse_weight(&g.weight)?)
}

/// The flat group behind a domain built from full groups and products of them.
pub fn flat_group(d: &Domain) -> Result<GroupSpec> {
    match d {
        Domain::Group(g) => Ok(g.clone()),
        Domain::Product(_) => {
            let (l, r) = d.split().expect("product");
            Ok(flat_group(l)?.product(&flat_group(r)?))
        }
        other => Err(Error::InvalidArgument(format!("no JSON form for the domain {other}"))),
    }
}

fn values_json(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|v| [v.re, v.im]).collect()
}

fn values_from_json(values: &[[f64; 2]]) -> Vec<Complex64> {
    values.iter().map(|[re, im]| Complex64::new(*re, *im)).collect()
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("plain data serializes")
}

pub fn signal_to_json(f: &Signal) -> Result<String> {
    Ok(render(&SignalJson {
        group: group_json(&flat_group(f.domain())?),
        values: values_json(f.values()),
        kind: None,
        split: None,
        input_weight: None,
    }))
}

fn signal_from_parsed(s: &SignalJson) -> Result<Signal> {
    let g = group_from_json(&s.group)?;
    Signal::new(Domain::Group(g), values_from_json(&s.values))
}

pub fn signal_from_json(text: &str) -> Result<Signal> {
    signal_from_parsed(&parse(text)?)
}

pub fn functional_to_json(sigma: &Functional) -> Result<String> {
    Ok(render(&SignalJson {
        group: group_json(&flat_group(sigma.domain())?),
        values: values_json(sigma.density().values()),
        kind: Some(sigma.kind()),
        split: None,
        input_weight: None,
    }))
}

/// A missing `"kind"` reads as an induced functional.
pub fn functional_from_json(text: &str) -> Result<Functional> {
    let s: SignalJson = parse(text)?;
    let density = signal_from_parsed(&s)?;
    Ok(Functional::from_density(density, s.kind.unwrap_or(FunctionalKind::Induced)))
}

pub fn kernel_to_json(k: &KernelFunctional) -> Result<String> {
    let g1 = flat_group(k.input())?;
    let g2 = flat_group(k.output())?;
    Ok(render(&SignalJson {
        group: group_json(&g1.product(&g2)),
        values: values_json(k.density().values()),
        kind: Some(k.functional().kind()),
        split: Some(g1.factors().len()),
        input_weight: Some(weight_string(g1.weight())),
    }))
}

pub fn kernel_from_json(text: &str) -> Result<KernelFunctional> {
    let s: SignalJson = parse(text)?;
    let split = s.split.ok_or_else(|| Error::Parse("kernel JSON needs \"split\"".into()))?;
    let w1 = match &s.input_weight {
        Some(w) => parse_weight(w)?,
        None => Ratio::from_integer(1),
    };
    let total = parse_weight(&s.group.weight)?;
    let f = &s.group.factors;
    if split == 0 || split >= f.len() {
        return Err(Error::Parse(format!("split {split} must leave factors on both sides of {f:?}")));
    }
    let g1 = GroupSpec::new(f[..split].to_vec(), w1)?;
    let g2 = GroupSpec::new(f[split..].to_vec(), total / w1)?;
    let p = Domain::product(&Domain::Group(g1), &Domain::Group(g2));
    let density = Signal::new(p, values_from_json(&s.values))?;
    KernelFunctional::new(Functional::from_density(density, s.kind.unwrap_or(FunctionalKind::Induced)))
}

pub fn operator_to_json(t: &Operator) -> Result<String> {
    if t.is_antilinear() {
        return Err(Error::InvalidArgument("antilinear operators have no matrix file form".into()));
    }
    let m = t.matrix();
    let matrix = (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect();
    Ok(render(&OperatorJson { input: group_json(&flat_group(t.input())?), output: group_json(&flat_group(t.output())?), matrix }))
}

pub fn operator_from_json(text: &str) -> Result<Operator> {
    let o: OperatorJson = parse(text)?;
    let d1 = Domain::Group(group_from_json(&o.input)?);
    let d2 = Domain::Group(group_from_json(&o.output)?);
    if o.matrix.len() != d2.len() || o.matrix.iter().any(|r| r.len() != d1.len()) {
        return Err(Error::Parse(format!("operator matrix must be {}x{}", d2.len(), d1.len())));
    }
    let entries: Vec<f64> = o.matrix.iter().flatten().flatten().copied().collect();
    if let Some(i) = entries.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(i / 2));
    }
    let m = DMatrix::from_fn(d2.len(), d1.len(), |r, c| {
        let [re, im] = o.matrix[r][c];
        Complex64::new(re, im)
    });
    Operator::from_matrix("operator", &d1, &d2, m, false)
}
