use num_complex::Complex64;

use crate::error::{Error, Result};

use super::decomp::Basis;

/// Largest absolute entry of the inverse of the embedding matrix
/// (sigma_r(omega_i)), rounded outward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HasseBound {
    pub b_val: f64,
}

impl HasseBound {
    /// Bound on |a_{m,i}| given a bound on |sigma(a_m)| for every embedding.
    pub fn coordinate_bound(&self, dim: usize, embedding_bound: f64) -> f64 {
        dim as f64 * self.b_val * embedding_bound
    }
}

/// Complex roots of a monic polynomial (ascending coefficients), by
/// Durand-Kerner iteration polished with Newton steps.
pub fn complex_roots(minpoly: &[i64]) -> Result<Vec<Complex64>> {
    let d = minpoly.len() - 1;
    let c: Vec<f64> = minpoly.iter().map(|&x| x as f64).collect();
    let eval = |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let deriv = |z: Complex64| {
        c.iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &a)| acc * z + a * i as f64)
    };
    if d == 1 {
        return Ok(vec![Complex64::new(-c[0], 0.0)]);
    }
    let radius = 1.0 + c[..d].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..d).map(|i| seed.powu(i as u32) * radius).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let dz = deriv(*zi);
            if dz.norm() > 0.0 {
                *zi -= eval(*zi) / dz;
            }
        }
    }
    let scale = c.iter().fold(1.0f64, |m, a| m.max(a.abs())) * radius.powi(d as i32);
    for zi in &z {
        if eval(*zi).norm() > 1e-9 * scale || !zi.re.is_finite() {
            return Err(Error::Precision("root finding did not converge".into()));
        }
    }
    Ok(z)
}

fn invert(m: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let d = m.len();
    let mut a: Vec<Vec<Complex64>> = m.to_vec();
    let mut inv: Vec<Vec<Complex64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();
    for col in 0..d {
        let piv = (col..d).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm()))?;
        if a[piv][col].norm() < 1e-300 {
            return None;
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = a[col][col].inv();
        for j in 0..d {
            a[col][j] *= s;
            inv[col][j] *= s;
        }
        for r in 0..d {
            if r != col {
                let f = a[r][col];
                if f.norm() != 0.0 {
                    for j in 0..d {
                        let (x, y) = (a[col][j], inv[col][j]);
                        a[r][j] -= f * x;
                        inv[r][j] -= f * y;
                    }
                }
            }
        }
    }
    Some(inv)
}

/// The constant B of the coefficient bound for a power basis of Z[y].
///
/// The floating inverse W is checked through its residual E = V W - I;
/// with e = max-row-sum(E) < 1/2 the exact inverse differs from W entrywise
/// by at most ||W|| e / (1 - e), which is added before a final relative
/// inflation covering root errors.
pub fn hasse_bound(basis: &Basis) -> Result<HasseBound> {
    let d = basis.dim();
    if d == 1 {
        return Ok(HasseBound { b_val: 1.0 });
    }
    let roots = complex_roots(&basis.minpoly)?;
    let mut sep = f64::INFINITY;
    for i in 0..d {
        for j in 0..i {
            sep = sep.min((roots[i] - roots[j]).norm());
        }
    }
    if sep < 1e-6 {
        return Err(Error::Precision(
            "minimal polynomial has (nearly) repeated roots".into(),
        ));
    }
    let v: Vec<Vec<Complex64>> = roots
        .iter()
        .map(|r| (0..d).map(|i| r.powu(i as u32)).collect())
        .collect();
    let w = invert(&v).ok_or_else(|| Error::Precision("embedding matrix is singular".into()))?;
    let mut resid = 0.0f64;
    for i in 0..d {
        let mut row = 0.0;
        for j in 0..d {
            let mut s = Complex64::new(if i == j { -1.0 } else { 0.0 }, 0.0);
            for t in 0..d {
                s += v[i][t] * w[t][j];
            }
            row += s.norm();
        }
        resid = resid.max(row);
    }
    if resid > 1e-6 {
        return Err(Error::Precision(format!(
            "inverse embedding matrix residual {resid:e} too large"
        )));
    }
    let wnorm = w
        .iter()
        .map(|r| r.iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let max_entry = w.iter().flatten().map(|x| x.norm()).fold(0.0f64, f64::max);
    let b_val = (max_entry + wnorm * resid / (1.0 - resid)) * (1.0 + 1e-9) + 1e-12;
    if b_val < 1.0 / d as f64 {
        return Err(Error::Precision("bound below the 1/d floor".into()));
    }
    Ok(HasseBound { b_val })
}
