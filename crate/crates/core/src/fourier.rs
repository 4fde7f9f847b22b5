//! Fourier transforms: full, partial and symplectic.
//!
//! `f^(omega) = sum_x f(x) conj(omega(x)) w_D`. The inverse uses `w_{D^}` and
//! unconjugated characters. On products of full groups the sum factors over the
//! cyclic axes and is evaluated one axis at a time; other domains use the
//! character table directly.

use num_complex::Complex64;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::group::root_of_unity;
use crate::signal::Signal;

/// Unnormalized multi-axis DFT: `out[k] = sum_x v[x] exp(sign 2 pi i <k,x>)`.
/// A buffer holding several consecutive blocks of `prod(axes)` values is
/// transformed block by block.
fn dft_axes(values: &mut [Complex64], axes: &[usize], conj: bool) {
    let total = values.len();
    let mut stride: usize = axes.iter().product();
    assert!(stride > 0 && total % stride == 0, "buffer is not a whole number of blocks");
    let mut buf = Vec::new();
    for &n in axes {
        stride /= n;
        if n == 1 {
            continue;
        }
        let sign = if conj { -1.0 } else { 1.0 };
        // Interleaved (re, im) roots and input line.
        let roots: Vec<f64> = (0..n)
            .flat_map(|k| {
                let r = root_of_unity(k, n);
                [r.re, sign * r.im]
            })
            .collect();
        buf.resize(2 * n, 0.0);
        let block = n * stride;
        // SAFETY: every index stays below `total` (values) or `2 n` (roots, buf):
        // `base + off + i * stride < base + block <= total` for `i < n`, `off < stride`.
        unsafe { dft_lines(values.as_mut_ptr(), total, block, stride, n, roots.as_ptr(), buf.as_mut_ptr()) };
    }
}

/// The innermost loops of [`dft_axes`], written with `while` and raw pointers
/// because unoptimized builds would otherwise spend most of their time in
/// iterator and bounds-check calls.
#[allow(clippy::too_many_arguments)]
unsafe fn dft_lines(values: *mut Complex64, total: usize, block: usize, stride: usize, n: usize, roots: *const f64, buf: *mut f64) {
    let mut base = 0;
    while base < total {
        let mut off = 0;
        while off < stride {
            let line = values.add(base + off);
            let mut i = 0;
            while i < n {
                let v = *line.add(i * stride);
                *buf.add(2 * i) = v.re;
                *buf.add(2 * i + 1) = v.im;
                i += 1;
            }
            let mut k = 0;
            while k < n {
                let (mut ar, mut ai) = (0.0, 0.0);
                let mut idx = 0;
                let mut x = 0;
                while x < n {
                    let (br, bi) = (*buf.add(2 * x), *buf.add(2 * x + 1));
                    let (cr, ci) = (*roots.add(2 * idx), *roots.add(2 * idx + 1));
                    ar += br * cr - bi * ci;
                    ai += br * ci + bi * cr;
                    idx += k;
                    if idx >= n {
                        idx -= n;
                    }
                    x += 1;
                }
                *line.add(k * stride) = Complex64::new(ar, ai);
                k += 1;
            }
            off += 1;
        }
        base += block;
    }
}

/// Forward transforms of consecutive blocks of `d.len()` values, each read as a
/// signal on `d`; the result holds the transforms in the same order.
pub(crate) fn fourier_blocks(mut values: Vec<Complex64>, d: &Domain) -> Vec<Complex64> {
    let w = d.weight_f64();
    if let Some(axes) = d.axes() {
        dft_axes(&mut values, &axes, true);
        values.iter_mut().for_each(|v| *v *= w);
        return values;
    }
    let n = d.len();
    values.chunks(n).flat_map(|c| fourier(&Signal::raw(d.clone(), c.to_vec())).into_values()).collect()
}

/// Fourier transform `D -> D^`.
pub fn fourier(f: &Signal) -> Signal {
    let d = f.domain();
    let dual = d.dual();
    let w = d.weight_f64();
    if let Some(axes) = d.axes() {
        let mut v = f.values().to_vec();
        dft_axes(&mut v, &axes, true);
        return Signal::raw(dual, v.into_iter().map(|c| c * w).collect());
    }
    fourier_direct(f)
}

/// Fourier transform by the defining character sum (reference path).
pub fn fourier_direct(f: &Signal) -> Signal {
    let d = f.domain();
    let dual = d.dual();
    let w = d.weight_f64();
    Signal::from_fn(&dual, |omega| {
        let s: Complex64 = f.values().iter().enumerate().map(|(x, v)| v * d.pairing(omega, x).conj()).sum();
        s * w
    })
}

/// Inverse transform `D^ -> D`.
pub fn inverse_fourier(big_f: &Signal) -> Signal {
    let dh = big_f.domain();
    let d = dh.dual();
    let w = dh.weight_f64();
    if let Some(axes) = dh.axes() {
        let mut v = big_f.values().to_vec();
        dft_axes(&mut v, &axes, false);
        return Signal::raw(d, v.into_iter().map(|c| c * w).collect());
    }
    Signal::from_fn(&d, |x| {
        let s: Complex64 = big_f.values().iter().enumerate().map(|(omega, v)| v * d.pairing(omega, x)).sum();
        s * w
    })
}

fn split_product(f: &Signal) -> Result<(Domain, Domain)> {
    let (l, r) = f
        .domain()
        .split()
        .ok_or_else(|| Error::InvalidArgument("partial Fourier transform needs a product domain".into()))?;
    Ok((l.clone(), r.clone()))
}

/// Applies `op` to every slice along the second coordinate.
fn map_rows(f: &Signal, left: &Domain, right: &Domain, op: impl Fn(&Signal) -> Signal) -> Signal {
    let n = right.len();
    let mut out_right = None;
    let mut values = Vec::with_capacity(f.len());
    for x in 0..left.len() {
        let row = Signal::raw(right.clone(), f.values()[x * n..(x + 1) * n].to_vec());
        let t = op(&row);
        if out_right.is_none() {
            out_right = Some(t.domain().clone());
        }
        values.extend_from_slice(t.values());
    }
    let out_right = out_right.unwrap_or_else(|| right.dual());
    Signal::raw(Domain::product(left, &out_right), values)
}

/// Applies `op` to every slice along the first coordinate.
fn map_cols(f: &Signal, left: &Domain, right: &Domain, op: impl Fn(&Signal) -> Signal) -> Signal {
    let n = right.len();
    let mut cols = Vec::with_capacity(n);
    let mut out_left = None;
    for t in 0..n {
        let col = Signal::from_fn(left, |x| f.get(x * n + t));
        let c = op(&col);
        if out_left.is_none() {
            out_left = Some(c.domain().clone());
        }
        cols.push(c);
    }
    let out_left = out_left.unwrap_or_else(|| left.dual());
    let d = Domain::product(&out_left, right);
    Signal::from_fn(&d, |i| cols[i % n].get(i / n))
}

/// Fourier transform in the first coordinate: `D1 x D2 -> D1^ x D2`.
pub fn partial_fourier_1(f: &Signal) -> Result<Signal> {
    let (l, r) = split_product(f)?;
    Ok(map_cols(f, &l, &r, fourier))
}

/// Fourier transform in the second coordinate: `D1 x D2 -> D1 x D2^`.
pub fn partial_fourier_2(f: &Signal) -> Result<Signal> {
    let (l, r) = split_product(f)?;
    Ok(map_rows(f, &l, &r, fourier))
}

/// Inverse transform in the second coordinate: `D1 x D2^ -> D1 x D2`.
pub fn inverse_partial_fourier_2(f: &Signal) -> Result<Signal> {
    let (l, r) = split_product(f)?;
    Ok(map_rows(f, &l, &r, inverse_fourier))
}

/// Inverse transform in the first coordinate: `D1^ x D2 -> D1 x D2`.
pub fn inverse_partial_fourier_1(f: &Signal) -> Result<Signal> {
    let (l, r) = split_product(f)?;
    Ok(map_cols(f, &l, &r, inverse_fourier))
}

/// Exchanges the two coordinates: `F(a, b) -> F(b, a)`.
pub fn swap_coordinates(f: &Signal) -> Result<Signal> {
    let (l, r) = split_product(f)?;
    let n = r.len();
    let m = l.len();
    let d = Domain::product(&r, &l);
    Ok(Signal::from_fn(&d, |i| f.get((i % m) * n + i / m)))
}

/// Symplectic Fourier transform on `D x D^`:
/// `F_s F(x, omega) = sum_{t, xi} F(t, xi) conj(omega(t)) xi(x) w_D w_{D^}`.
pub fn symplectic_fourier(f: &Signal) -> Result<Signal> {
    let (l, r) = split_product(f)?;
    if r != l.dual() {
        return Err(Error::InvalidArgument("symplectic Fourier transform needs a domain of the form D x D^".into()));
    }
    let step = partial_fourier_1(f)?; // (omega, xi)
    let step = inverse_partial_fourier_2(&step)?; // (omega, x)
    swap_coordinates(&step) // (x, omega)
}
