//! Matrix exponential by scaling and squaring with a degree-13 Padé
//! approximant (Higham 2005). Fixed order, no randomness.

use num_complex::Complex64 as C64;

use crate::linalg::{identity, mul, norm_one, solve};

const THETA_13: f64 = 5.371920351148152;

const B: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn lin(terms: &[(f64, &[C64])], n: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); n * n];
    for (c, m) in terms {
        for (o, v) in out.iter_mut().zip(m.iter()) {
            *o += v * *c;
        }
    }
    out
}

pub fn expm(a: &[C64], n: usize) -> Vec<C64> {
    let norm = norm_one(a, n);
    let s = if norm > THETA_13 { (norm / THETA_13).log2().ceil() as i32 } else { 0 };
    let scale = 0.5f64.powi(s);
    let a: Vec<C64> = a.iter().map(|v| v * scale).collect();
    let id = identity(n);
    let a2 = mul(&a, &a, n);
    let a4 = mul(&a2, &a2, n);
    let a6 = mul(&a4, &a2, n);

    let inner_u = mul(&a6, &lin(&[(B[13], &a6), (B[11], &a4), (B[9], &a2)], n), n);
    let poly_u = lin(&[(1.0, &inner_u), (B[7], &a6), (B[5], &a4), (B[3], &a2), (B[1], &id)], n);
    let u = mul(&a, &poly_u, n);
    let inner_v = mul(&a6, &lin(&[(B[12], &a6), (B[10], &a4), (B[8], &a2)], n), n);
    let v = lin(&[(1.0, &inner_v), (B[6], &a6), (B[4], &a4), (B[2], &a2), (B[0], &id)], n);

    let p = lin(&[(1.0, &v), (1.0, &u)], n);
    let q = lin(&[(1.0, &v), (-1.0, &u)], n);
    let mut r = solve(&q, &p, n);
    for _ in 0..s {
        r = mul(&r, &r, n);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_and_rotation() {
        let e = expm(&[C64::new(0.5, 0.0)], 1);
        assert!((e[0].re - 0.5f64.exp()).abs() < 1e-15);

        // exp([[0, -t], [t, 0]]) is a rotation by t; t = 20 exercises squaring.
        for t in [0.3, 20.0] {
            let a = [C64::new(0.0, 0.0), C64::new(-t, 0.0), C64::new(t, 0.0), C64::new(0.0, 0.0)];
            let e = expm(&a, 2);
            assert!((e[0].re - t.cos()).abs() < 1e-12);
            assert!((e[1].re + t.sin()).abs() < 1e-12);
            assert!((e[2].re - t.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn nilpotent() {
        let a = [C64::new(0.0, 0.0), C64::new(2.0, 1.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let e = expm(&a, 2);
        assert!((e[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!((e[1] - C64::new(2.0, 1.0)).norm() < 1e-14);
        assert!(e[2].norm() < 1e-15);
    }
}
