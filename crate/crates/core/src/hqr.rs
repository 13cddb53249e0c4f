//! Eigenvalues of a general real matrix: diagonal balancing, Householder
//! reduction to upper Hessenberg form, then Francis double-shift QR with
//! deflation and ad hoc exceptional shifts.
//!
//! The exceptional shifts matter for matrices whose eigenvalues share a
//! modulus about the shift, such as `c I - P` for a cyclic permutation `P`,
//! where plain Wilkinson shifts stall.

use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::spectra::Complex64;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Diagonal similarity by powers of two that evens out row and column norms.
/// Exact in floating point.
fn balance(a: &mut DMatrix<f64>) {
    let n = a.nrows();
    let radix = 2.0f64;
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let (mut c, mut r) = (0.0, 0.0);
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let g = r / radix;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            let g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let g = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= g;
                }
                for j in 0..n {
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Eigenvalues of an upper Hessenberg matrix (entries below the first
/// subdiagonal are ignored and destroyed).
fn hessenberg_qr(a: &mut DMatrix<f64>) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    let mut out = vec![Complex::new(0.0, 0.0); n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    let eps = f64::EPSILON;
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            // look for a negligible subdiagonal element
            let mut l = nu;
            while l > 0 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() <= eps * s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[(nu, nu)];
            if l == nu {
                out[nu] = Complex::new(x + t, 0.0);
                nn -= 1;
            } else {
                let mut y = a[(nu - 1, nu - 1)];
                let mut w = a[(nu, nu - 1)] * a[(nu - 1, nu)];
                if l == nu - 1 {
                    let p = 0.5 * (y - x);
                    let q = p * p + w;
                    let mut z = q.abs().sqrt();
                    x += t;
                    if q >= 0.0 {
                        z = p + sign(z, p);
                        out[nu - 1] = Complex::new(x + z, 0.0);
                        out[nu] = if z != 0.0 {
                            Complex::new(x - w / z, 0.0)
                        } else {
                            out[nu - 1]
                        };
                    } else {
                        out[nu] = Complex::new(x + p, -z);
                        out[nu - 1] = Complex::new(x + p, z);
                    }
                    nn -= 2;
                } else {
                    if its == MAX_SWEEPS_PER_EIGENVALUE {
                        return Err(Error::NoConvergence);
                    }
                    if its > 0 && its % 10 == 0 {
                        // exceptional shift
                        t += x;
                        for i in 0..=nu {
                            a[(i, i)] -= x;
                        }
                        let s = a[(nu, nu - 1)].abs() + a[(nu - 1, nu - 2)].abs();
                        x = 0.75 * s;
                        y = x;
                        w = -0.4375 * s * s;
                    }
                    its += 1;
                    francis_step(a, l, nu, x, y, w);
                }
            }
            if l + 1 >= nn.max(0) as usize || nn < 0 {
                break;
            }
        }
    }
    Ok(out)
}

/// One implicit double-shift QR sweep on the active window `l..=nn`.
fn francis_step(a: &mut DMatrix<f64>, l: usize, nn: usize, x: f64, y: f64, w: f64) {
    let eps = f64::EPSILON;
    let (mut p, mut q, mut r);
    // look for two consecutive small subdiagonal elements
    let mut m = nn - 2;
    loop {
        let z = a[(m, m)];
        let rr = x - z;
        let s = y - z;
        p = (rr * s - w) / a[(m + 1, m)] + a[(m, m + 1)];
        q = a[(m + 1, m + 1)] - z - rr - s;
        r = a[(m + 2, m + 1)];
        let s = p.abs() + q.abs() + r.abs();
        p /= s;
        q /= s;
        r /= s;
        if m == l {
            break;
        }
        let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
        let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
        if u <= eps * v {
            break;
        }
        m -= 1;
    }
    for i in m..nn - 1 {
        a[(i + 2, i)] = 0.0;
        if i != m {
            a[(i + 2, i - 1)] = 0.0;
        }
    }
    for k in m..nn {
        let mut xk = 0.0;
        if k != m {
            p = a[(k, k - 1)];
            q = a[(k + 1, k - 1)];
            r = if k + 1 != nn { a[(k + 2, k - 1)] } else { 0.0 };
            xk = p.abs() + q.abs() + r.abs();
            if xk != 0.0 {
                p /= xk;
                q /= xk;
                r /= xk;
            }
        }
        let s = sign((p * p + q * q + r * r).sqrt(), p);
        if s == 0.0 {
            continue;
        }
        if k == m {
            if l != m {
                a[(k, k - 1)] = -a[(k, k - 1)];
            }
        } else {
            a[(k, k - 1)] = -s * xk;
        }
        p += s;
        let xs = p / s;
        let ys = q / s;
        let zs = r / s;
        q /= p;
        r /= p;
        for j in k..=nn {
            let mut pj = a[(k, j)] + q * a[(k + 1, j)];
            if k + 1 != nn {
                pj += r * a[(k + 2, j)];
                a[(k + 2, j)] -= pj * zs;
            }
            a[(k + 1, j)] -= pj * ys;
            a[(k, j)] -= pj * xs;
        }
        let mmin = nn.min(k + 3);
        for i in l..=mmin {
            let mut pi = xs * a[(i, k)] + ys * a[(i, k + 1)];
            if k + 1 != nn {
                pi += zs * a[(i, k + 2)];
                a[(i, k + 2)] -= pi * r;
            }
            a[(i, k + 1)] -= pi * q;
            a[(i, k)] -= pi;
        }
    }
}

/// All eigenvalues of a finite real square matrix, unordered.
pub(crate) fn eigenvalues(m: DMatrix<f64>) -> Result<Vec<Complex64>> {
    let mut a = m;
    balance(&mut a);
    let mut h = a.hessenberg().h();
    let eigs = hessenberg_qr(&mut h)?;
    if eigs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NoConvergence);
    }
    Ok(eigs)
}
