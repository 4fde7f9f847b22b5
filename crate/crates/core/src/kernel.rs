//! Operators `D1 -> D2` as functionals on `D1 x D2`:
//! `(f2, T f1) = (f1 (x) f2, sigma)`. Testing with deltas gives
//! `(T f1)(x2) = sum_{x1} f1(x1) kappa(x1, x2) w1` for the density `kappa`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::domain::Domain;
use crate::duality::{Functional, FunctionalKind};
use crate::error::{Error, Result};
use crate::operators::Operator;
use crate::signal::{tensor, Signal};

/// A functional on a product domain `D1 x D2`, read as an operator kernel.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelFunctional {
    functional: Functional,
}

impl KernelFunctional {
    pub fn new(functional: Functional) -> Result<KernelFunctional> {
        if functional.domain().split().is_none() {
            return Err(Error::InvalidArgument(format!("kernel needs a product domain, got {}", functional.domain())));
        }
        Ok(KernelFunctional { functional })
    }

    pub fn from_density(density: Signal) -> Result<KernelFunctional> {
        KernelFunctional::new(Functional::from_density(density, FunctionalKind::Induced))
    }

    pub fn functional(&self) -> &Functional {
        &self.functional
    }

    pub fn density(&self) -> &Signal {
        self.functional.density()
    }

    pub fn input(&self) -> &Domain {
        self.factors().0
    }

    pub fn output(&self) -> &Domain {
        self.factors().1
    }

    fn factors(&self) -> (&Domain, &Domain) {
        self.functional.domain().split().expect("checked at construction")
    }

    /// `kappa(x1, x2)`.
    pub fn get(&self, x1: usize, x2: usize) -> Complex64 {
        self.density().get(x1 * self.output().len() + x2)
    }
}

pub fn kernel_to_operator(k: &KernelFunctional) -> Operator {
    let (d1, d2) = (k.input(), k.output());
    let w1 = d1.weight_f64();
    let m = DMatrix::from_fn(d2.len(), d1.len(), |x2, x1| k.get(x1, x2) * w1);
    Operator::from_matrix("kernel operator", d1, d2, m, false).expect("shape matches the factors")
}

pub fn operator_to_kernel(t: &Operator) -> Result<KernelFunctional> {
    if t.is_antilinear() {
        return Err(Error::InvalidArgument("an antilinear operator has no kernel".into()));
    }
    let (d1, d2) = (t.input(), t.output());
    let w1 = d1.weight_f64();
    let n2 = d2.len();
    let p = Domain::product(d1, d2);
    let density = Signal::from_fn(&p, |i| t.matrix()[(i % n2, i / n2)] / w1);
    KernelFunctional::from_density(density)
}

/// `(f2, T f1)` under the bilinear pairing of `D2`.
pub fn operator_bilinear_form(t: &Operator, f1: &Signal, f2: &Signal) -> Result<Complex64> {
    Functional::induced(f2).pair(&t.apply(f1)?)
}

/// The kernel of `T2 o T1`: `kappa(x1, x3) = sum_{x2} kappa1(x1, x2) kappa2(x2, x3) w2`.
pub fn compose_kernels(first: &KernelFunctional, second: &KernelFunctional) -> Result<KernelFunctional> {
    if first.output() != second.input() {
        return Err(Error::DomainMismatch { expected: second.input().to_string(), found: first.output().to_string() });
    }
    let (d1, d2, d3) = (first.input(), first.output(), second.output());
    let w2 = d2.weight_f64();
    let p = Domain::product(d1, d3);
    let density = Signal::from_fn(&p, |i| {
        let (x1, x3) = (i / d3.len(), i % d3.len());
        (0..d2.len()).map(|x2| first.get(x1, x2) * second.get(x2, x3)).sum::<Complex64>() * w2
    });
    KernelFunctional::from_density(density)
}

/// The unique functional on `D1 x D2` with `(f1 (x) f2, sigma) = A(f1, f2)` for a
/// bilinear `A`, read off the basis tensors `delta_x1 (x) delta_x2`.
pub fn kernel_from_bilinear(
    d1: &Domain,
    d2: &Domain,
    a: impl Fn(&Signal, &Signal) -> Result<Complex64>,
) -> Result<KernelFunctional> {
    let p = Domain::product(d1, d2);
    let scale = 1.0 / p.weight_f64();
    let mut values = Vec::with_capacity(p.len());
    for x1 in 0..d1.len() {
        let e1 = Signal::delta(d1, x1);
        for x2 in 0..d2.len() {
            values.push(a(&e1, &Signal::delta(d2, x2))? * scale);
        }
    }
    KernelFunctional::from_density(Signal::new(p, values)?)
}

/// Errors of the tensor correspondence for `T`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensorCorrespondence {
    /// `max |A(delta_x1, delta_x2) - (delta_x1 (x) delta_x2, sigma_T)|` over all basis tensors.
    pub basis_error: f64,
    /// Largest entry of `T - kernel_to_operator(kernel_from_bilinear(A))`.
    pub resynthesis_error: f64,
}

/// Builds `A(f1, f2) = (f2, T f1)`, checks it against the kernel of `T` on every
/// basis tensor and resynthesizes `T` from `A` alone.
pub fn tensor_correspondence(t: &Operator) -> Result<TensorCorrespondence> {
    let sigma = operator_to_kernel(t)?;
    let (d1, d2) = (t.input(), t.output());
    let mut basis_error: f64 = 0.0;
    for x1 in 0..d1.len() {
        let e1 = Signal::delta(d1, x1);
        for x2 in 0..d2.len() {
            let e2 = Signal::delta(d2, x2);
            let a = operator_bilinear_form(t, &e1, &e2)?;
            let b = sigma.functional().pair(&tensor(&e1, &e2))?;
            basis_error = basis_error.max((a - b).norm());
        }
    }
    let rebuilt = kernel_to_operator(&kernel_from_bilinear(d1, d2, |f1, f2| operator_bilinear_form(t, f1, f2))?);
    let resynthesis_error = (rebuilt.matrix() - t.matrix()).iter().fold(0.0, |m: f64, z| m.max(z.norm()));
    Ok(TensorCorrespondence { basis_error, resynthesis_error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::operators::fourier_operator;
    use crate::rng::{random_signal, seeded};
    use num_rational::Ratio;
    use proptest::prelude::*;

    fn grp(f: &[usize], p: i64, q: i64) -> Domain {
        Domain::Group(GroupSpec::new(f.to_vec(), Ratio::new(p, q)).unwrap())
    }

    fn matrix_diff(a: &Operator, b: &Operator) -> f64 {
        (a.matrix() - b.matrix()).iter().fold(0.0, |m: f64, z| m.max(z.norm()))
    }

    #[test]
    fn delta_kernel_is_rank_one() {
        let d1 = grp(&[3], 1, 2);
        let d2 = grp(&[4], 1, 1);
        let p = Domain::product(&d1, &d2);
        let t = kernel_to_operator(&KernelFunctional::from_density(Signal::delta(&p, 0)).unwrap());
        let mut rng = seeded(1);
        let f = random_signal(&d1, &mut rng);
        let expected = Signal::delta(&d2, 0).scale(f.get(0) * 0.5);
        assert!(t.apply(&f).unwrap().max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn identity_kernel() {
        let d = grp(&[5], 1, 1);
        let k = operator_to_kernel(&Operator::identity(&d)).unwrap();
        for x1 in 0..5 {
            for x2 in 0..5 {
                let expected = if x1 == x2 { 1.0 } else { 0.0 };
                assert_eq!(k.get(x1, x2), Complex64::new(expected, 0.0));
            }
        }
        let d = grp(&[2, 3], 2, 5);
        let k = operator_to_kernel(&Operator::identity(&d)).unwrap();
        assert!((k.get(4, 4).re - 2.5).abs() < 1e-15);
    }

    #[test]
    fn fourier_kernel_is_conjugate_character() {
        let d = grp(&[4], 1, 1);
        let ft = fourier_operator(&d).operator;
        let k = operator_to_kernel(&ft).unwrap();
        for x in 0..4 {
            for w in 0..4 {
                assert!((k.get(x, w) - d.pairing(w, x).conj()).norm() < 1e-14);
            }
        }
        assert!(matrix_diff(&kernel_to_operator(&k), &ft) < 1e-14);
    }

    #[test]
    fn composition_is_contraction() {
        let mut rng = seeded(2);
        let d1 = grp(&[3], 1, 3);
        let d2 = grp(&[2, 2], 3, 2);
        let d3 = grp(&[5], 1, 1);
        let k1 = KernelFunctional::from_density(random_signal(&Domain::product(&d1, &d2), &mut rng)).unwrap();
        let k2 = KernelFunctional::from_density(random_signal(&Domain::product(&d2, &d3), &mut rng)).unwrap();
        let t = kernel_to_operator(&k2).compose(&kernel_to_operator(&k1)).unwrap();
        let k = compose_kernels(&k1, &k2).unwrap();
        assert!(matrix_diff(&kernel_to_operator(&k), &t) < 1e-13);
        assert!(compose_kernels(&k2, &k1).is_err());
    }

    #[test]
    fn correspondence_on_all_basis_tensors() {
        let mut rng = seeded(3);
        let d1 = grp(&[3], 1, 1);
        let d2 = grp(&[4], 1, 2);
        let k = KernelFunctional::from_density(random_signal(&Domain::product(&d1, &d2), &mut rng)).unwrap();
        let r = tensor_correspondence(&kernel_to_operator(&k)).unwrap();
        assert!(r.basis_error < 1e-13 && r.resynthesis_error < 1e-13, "{r:?}");
    }

    #[test]
    fn rejects_non_product_and_antilinear() {
        let d = grp(&[4], 1, 1);
        assert!(KernelFunctional::from_density(Signal::zeros(&d)).is_err());
        let conj = crate::operators::conjugation_operator(&d).operator;
        assert!(operator_to_kernel(&conj).is_err());
    }

    proptest! {
        #[test]
        fn round_trips(seed in 0u64..200) {
            let mut rng = seeded(seed);
            let d1 = grp(&[3], 2, 3);
            let d2 = grp(&[4], 1, 1);
            let k = KernelFunctional::from_density(random_signal(&Domain::product(&d1, &d2), &mut rng)).unwrap();
            let t = kernel_to_operator(&k);
            let back = operator_to_kernel(&t).unwrap();
            prop_assert!(back.density().max_abs_diff(k.density()).unwrap() < 1e-12);
            let again = kernel_to_operator(&back);
            prop_assert!(matrix_diff(&again, &t) < 1e-12);
            // Defining identity on random test signals.
            let f1 = random_signal(&d1, &mut rng);
            let f2 = random_signal(&d2, &mut rng);
            let lhs = operator_bilinear_form(&t, &f1, &f2).unwrap();
            let rhs = k.functional().pair(&tensor(&f1, &f2)).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}
