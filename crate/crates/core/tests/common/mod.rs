//! Independent reference integrator for the effective model. Written
//! directly from the equations of motion on plain arrays, with its own
//! pulse evaluation and a Gauss-Legendre (implicit midpoint) scheme, so it
//! shares no code path with the library integrator.

#![allow(dead_code)]

use num_complex::Complex64;

pub struct Scenario {
    pub g_peak: f64,
    pub delta: f64,
    pub hop_factor: f64,
    pub t1: f64,
    pub t2: f64,
    pub s: f64,
    pub t_off: f64,
    pub t_final: f64,
    pub rate: f64,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            g_peak: 2.5,
            delta: 10.5,
            hop_factor: 2.0,
            t1: 1.0,
            t2: 10.0,
            s: 0.25,
            t_off: 9.0,
            t_final: 20.0,
            rate: 0.0,
        }
    }
}

type V = [Complex64; 4];

fn generator(sc: &Scenario, t: f64, fiber: bool) -> [[Complex64; 4]; 4] {
    let gauss = |tc: f64| sc.g_peak * (-(t - tc) * (t - tc) / (2.0 * sc.s * sc.s)).exp();
    let (g1, g2) = (gauss(sc.t1), gauss(sc.t2));
    let j = if fiber { sc.hop_factor / sc.delta } else { 0.0 };
    let mi = |x: f64| Complex64::new(0.0, -x);
    let d = Complex64::new(-0.5 * sc.rate, 0.0);
    let z = Complex64::new(0.0, 0.0);
    // rows: a1, a2, b1, b2
    [
        [d, mi(j), mi(g1), z],
        [mi(j), d, z, mi(g2)],
        [mi(g1), z, d, z],
        [z, mi(g2), z, d],
    ]
}

fn mat_vec(m: &[[Complex64; 4]; 4], v: &V) -> V {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
    }
    out
}

/// Solve (I - h/2 A) x = (I + h/2 A) y by Gaussian elimination.
fn midpoint_step(a: &[[Complex64; 4]; 4], y: &V, h: f64) -> V {
    let one = Complex64::new(1.0, 0.0);
    let ay = mat_vec(a, y);
    let mut rhs: V = [
        y[0] + ay[0] * (h / 2.0),
        y[1] + ay[1] * (h / 2.0),
        y[2] + ay[2] * (h / 2.0),
        y[3] + ay[3] * (h / 2.0),
    ];
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            m[i][k] = -a[i][k] * (h / 2.0)
                + if i == k {
                    one
                } else {
                    Complex64::new(0.0, 0.0)
                };
        }
    }
    for col in 0..4 {
        let piv = (col..4)
            .max_by(|&x, &y| m[x][col].norm().total_cmp(&m[y][col].norm()))
            .unwrap();
        m.swap(col, piv);
        rhs.swap(col, piv);
        for row in col + 1..4 {
            let f = m[row][col] / m[col][col];
            for k in col..4 {
                let v = m[col][k];
                m[row][k] -= f * v;
            }
            let v = rhs[col];
            rhs[row] -= f * v;
        }
    }
    let mut x = [Complex64::new(0.0, 0.0); 4];
    for row in (0..4).rev() {
        let mut acc = rhs[row];
        for k in row + 1..4 {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    x
}

/// Final state from b1 = 1, using `steps_per_unit` midpoint steps per unit
/// time with the fiber switch placed exactly on a step boundary.
pub fn reference_final_state(sc: &Scenario, steps_per_unit: usize) -> V {
    let mut y: V = [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
    ];
    let segments = [
        (0.0, sc.t_off.min(sc.t_final), true),
        (sc.t_off.min(sc.t_final), sc.t_final, false),
    ];
    for (start, end, fiber) in segments {
        if end <= start {
            continue;
        }
        let n = ((end - start) * steps_per_unit as f64).ceil() as usize;
        let h = (end - start) / n as f64;
        for k in 0..n {
            let tm = start + (k as f64 + 0.5) * h;
            y = midpoint_step(&generator(sc, tm, fiber), &y, h);
        }
    }
    y
}

pub fn reference_efficiency(sc: &Scenario, steps_per_unit: usize) -> f64 {
    reference_final_state(sc, steps_per_unit)[3].norm_sqr()
}
