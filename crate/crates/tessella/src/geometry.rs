//! Numeric realization in the hyperbolic plane (curvature -1).
//!
//! A hyperbolic type has a unique common side length: the interior angle of a
//! regular n-gon with side `ell` is `α = 2·arcsin(cos(π/n) / cosh(ell/2))`,
//! strictly decreasing in `ell`, so `Σ α(k_i, ell) = 2π` has exactly one root.
//! The inradius satisfies `sinh r = tanh(ell/2) / tan(π/n)`; the two formulas
//! are right-triangle identities of the same triangle and cross-validate via
//! `tan(α/2)·sinh(ell/2) = tanh(r)`.

use std::f64::consts::PI;

use thiserror::Error;

use crate::cyclic::{CyclicType, GeometryClass};

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("type {0} is {1}, not hyperbolic")]
    NotHyperbolic(String, GeometryClass),
    #[error("side length must be positive and finite, got {0}")]
    BadLength(f64),
    #[error("polygon size must be at least 3, got {0}")]
    BadSize(u32),
    #[error("root finding failed to bracket a solution")]
    NoBracket,
}

/// A hyperbolic distance, in curvature -1 units.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Length(pub f64);

fn check_size(n: u32) -> Result<(), GeometryError> {
    if n < 3 {
        return Err(GeometryError::BadSize(n));
    }
    Ok(())
}

fn check_length(ell: f64) -> Result<(), GeometryError> {
    if !(ell > 0.0 && ell.is_finite()) {
        return Err(GeometryError::BadLength(ell));
    }
    Ok(())
}

/// Interior angle of a regular n-gon with side `ell`.
pub fn interior_angle(n: u32, ell: Length) -> Result<f64, GeometryError> {
    check_size(n)?;
    check_length(ell.0)?;
    let ratio = (PI / f64::from(n)).cos() / (ell.0 / 2.0).cosh();
    Ok(2.0 * ratio.asin())
}

/// Inradius of a regular n-gon with side `ell`.
pub fn inradius(n: u32, ell: Length) -> Result<Length, GeometryError> {
    check_size(n)?;
    check_length(ell.0)?;
    let s = (ell.0 / 2.0).tanh() / (PI / f64::from(n)).tan();
    Ok(Length(s.asinh()))
}

/// The unique side length at which the interior angles of the type's faces
/// fit around a vertex: `Σ interior_angle(k_i, ell) = 2π`.
///
/// Bisection: the angle sum tends to `π·ϑ > 2π` as `ell → 0` and to 0 as
/// `ell → ∞`, so a sign change always brackets the root.
pub fn solve_side_length(t: &CyclicType) -> Result<Length, GeometryError> {
    if t.classify() != GeometryClass::Hyperbolic {
        return Err(GeometryError::NotHyperbolic(t.to_string(), t.classify()));
    }
    let g = |ell: f64| -> f64 {
        t.entries()
            .iter()
            .map(|&k| 2.0 * ((PI / f64::from(k)).cos() / (ell / 2.0).cosh()).asin())
            .sum::<f64>()
            - 2.0 * PI
    };
    let mut lo = 1e-12;
    let mut hi = 1.0;
    let mut grew = 0;
    while g(hi) > 0.0 {
        hi *= 2.0;
        grew += 1;
        if grew > 64 {
            return Err(GeometryError::NoBracket);
        }
    }
    if g(lo) < 0.0 {
        return Err(GeometryError::NoBracket);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    Ok(Length(0.5 * (lo + hi)))
}

/// The dual convex polygon of a fan: one corner per face of the type, corner
/// angle `2π/k_i`, side `s_i = r(k_i) + r(k_{i+1})` at the common side length,
/// and Gauss-Bonnet area `(d-2)π - Σ 2π/k_i`.
#[derive(Debug, Clone)]
pub struct DualTile {
    pub corner_sizes: Vec<u32>,
    pub corner_angles: Vec<f64>,
    pub side_lengths: Vec<f64>,
    pub side_length_of_type: Length,
    pub area: f64,
}

pub fn dual_tile(t: &CyclicType) -> Result<DualTile, GeometryError> {
    let ell = solve_side_length(t)?;
    let sizes: Vec<u32> = t.entries().to_vec();
    let d = sizes.len();
    let corner_angles: Vec<f64> = sizes.iter().map(|&k| 2.0 * PI / f64::from(k)).collect();
    let radii: Vec<f64> = sizes
        .iter()
        .map(|&k| inradius(k, ell).map(|r| r.0))
        .collect::<Result<_, _>>()?;
    let side_lengths: Vec<f64> = (0..d).map(|i| radii[i] + radii[(i + 1) % d]).collect();
    let area = (d as f64 - 2.0) * PI - corner_angles.iter().sum::<f64>();
    debug_assert!(corner_angles.iter().all(|&a| a < PI));
    Ok(DualTile {
        corner_sizes: sizes,
        corner_angles,
        side_lengths,
        side_length_of_type: ell,
        area,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ty(entries: &[u32]) -> CyclicType {
        CyclicType::new(entries.to_vec()).unwrap()
    }

    #[test]
    fn euclidean_limit_of_interior_angle() {
        for n in [3u32, 4, 7, 12, 50] {
            let a = interior_angle(n, Length(1e-8)).unwrap();
            let flat = (f64::from(n) - 2.0) * PI / f64::from(n);
            assert!((a - flat).abs() < 1e-6, "n={n}: {a} vs {flat}");
            // strictly decreasing in ell, always below the flat angle
            let a1 = interior_angle(n, Length(0.5)).unwrap();
            let a2 = interior_angle(n, Length(1.0)).unwrap();
            assert!(a1 > a2);
            assert!(a1 < flat);
        }
    }

    #[test]
    fn heptagonal_closed_form() {
        // the [7,7,7] tiling needs three angles of 2π/3
        let ell = 2.0 * ((PI / 7.0).cos() / (PI / 3.0).sin()).acosh();
        let a = interior_angle(7, Length(ell)).unwrap();
        assert!((a - 2.0 * PI / 3.0).abs() < 1e-12);
        let solved = solve_side_length(&ty(&[7, 7, 7])).unwrap();
        assert!((solved.0 - ell).abs() < 1e-10, "{} vs {}", solved.0, ell);
    }

    #[test]
    fn right_triangle_identity() {
        for n in [3u32, 5, 7, 11, 30] {
            for ell in [0.3, 0.7, 1.5, 3.0] {
                let alpha = interior_angle(n, Length(ell)).unwrap();
                let r = inradius(n, Length(ell)).unwrap();
                let lhs = (alpha / 2.0).tan() * (ell / 2.0).sinh();
                let rhs = r.0.tanh();
                assert!((lhs - rhs).abs() < 1e-10, "n={n} ell={ell}");
            }
        }
    }

    #[test]
    fn angle_equation_residuals_on_random_types() {
        let mut state = 0x5eedu64;
        let mut rnd = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 33
        };
        let mut found = 0;
        while found < 100 {
            let d = 3 + (rnd() % 6) as usize;
            let entries: Vec<u32> = (0..d).map(|_| 3 + (rnd() % 18) as u32).collect();
            let t = CyclicType::new(entries).unwrap();
            if t.classify() != GeometryClass::Hyperbolic {
                continue;
            }
            found += 1;
            let ell = solve_side_length(&t).unwrap();
            let sum: f64 = t
                .entries()
                .iter()
                .map(|&k| interior_angle(k, ell).unwrap())
                .sum();
            assert!(
                (sum - 2.0 * PI).abs() < 1e-10,
                "{t}: residual {}",
                sum - 2.0 * PI
            );
        }
    }

    #[test]
    fn inradius_monotone_in_size() {
        for ell in [0.5, 1.0, 2.0] {
            let mut prev = 0.0;
            for n in 3..=64 {
                let r = inradius(n, Length(ell)).unwrap().0;
                assert!(r > prev, "n={n} ell={ell}");
                prev = r;
            }
        }
    }

    #[test]
    fn dual_tile_of_4545() {
        let t = ty(&[4, 5, 4, 5]);
        let dual = dual_tile(&t).unwrap();
        let expect = [PI / 2.0, 2.0 * PI / 5.0, PI / 2.0, 2.0 * PI / 5.0];
        for (a, e) in dual.corner_angles.iter().zip(expect) {
            assert!((a - e).abs() < 1e-12);
        }
        assert!((dual.area - PI / 5.0).abs() < 1e-9);
        // all four sides are r(4)+r(5)
        for s in &dual.side_lengths {
            assert!((s - dual.side_lengths[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn dual_area_matches_exact_angle_sum() {
        for entries in [
            &[7u32, 7, 7][..],
            &[4, 5, 4, 5],
            &[3, 5, 7, 5, 11, 5, 13, 5, 11, 5, 7, 5, 11, 5],
        ] {
            let t = ty(entries);
            let dual = dual_tile(&t).unwrap();
            let theta = t.angle_sum().to_f64().unwrap();
            assert!((dual.area - PI * (theta - 2.0)).abs() < 1e-9, "{t}");
        }
    }

    #[test]
    fn near_euclidean_types_have_tiny_side_length() {
        // No type has 0 < ϑ-2 < 1/903: the closest hyperbolic triple to the
        // Euclidean boundary is [3,7,43] with excess exactly 1/903 ≈ 1.107e-3.
        // Check the degeneration there and along a sequence of shrinking
        // excesses: ell decreases with the excess and is < 0.1 at the floor.
        let two = num_rational::BigRational::from_integer(2.into());
        let cases: [(&[u32], f64); 4] = [
            (&[6, 6, 7], 1.0 / 21.0),
            (&[3, 9, 19], 1.0 / 171.0),
            (&[3, 8, 25], 1.0 / 300.0),
            (&[3, 7, 43], 1.0 / 903.0),
        ];
        let mut prev = f64::INFINITY;
        for (entries, excess) in cases {
            let t = ty(entries);
            let actual = (&t.angle_sum() - &two).to_f64().unwrap();
            assert!((actual - excess).abs() < 1e-12);
            let ell = solve_side_length(&t).unwrap().0;
            assert!(ell < prev, "{t}: {ell} should shrink");
            prev = ell;
        }
        // the extremal case is well inside the required ball
        assert!(prev < 0.1, "[3,7,43] -> {prev}");
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            solve_side_length(&ty(&[6, 6, 6])),
            Err(GeometryError::NotHyperbolic(_, GeometryClass::Euclidean))
        ));
        assert!(interior_angle(2, Length(1.0)).is_err());
        assert!(interior_angle(7, Length(0.0)).is_err());
        assert!(inradius(7, Length(-1.0)).is_err());
    }
}
