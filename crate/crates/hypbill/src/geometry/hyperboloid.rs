//! Hyperboloid-model primitives.
//!
//! Points are unit future vectors for `B(x, y) = -x0 y0 + x1 y1 + x2 y2`;
//! geodesics are represented by unit spacelike normals `n`, with the
//! signed quantity `B(x, n)` equal to the sinh of the distance from `x` to
//! the geodesic.

pub type Vec3 = [f64; 3];
pub type Mat3 = [[f64; 3]; 3];

pub const ORIGIN: Vec3 = [1.0, 0.0, 0.0];

pub const IDENTITY: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];

pub fn form(x: &Vec3, y: &Vec3) -> f64 {
    -x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

pub fn scale(x: &Vec3, s: f64) -> Vec3 {
    [x[0] * s, x[1] * s, x[2] * s]
}

pub fn add(x: &Vec3, y: &Vec3) -> Vec3 {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2]]
}

/// `(1 - t) x + t y`; projectively a point of the geodesic through `x`, `y`.
pub fn lerp(x: &Vec3, y: &Vec3, t: f64) -> Vec3 {
    add(&scale(x, 1.0 - t), &scale(y, t))
}

/// Rescales a future timelike vector onto the hyperboloid.
pub fn normalize_point(x: &Vec3) -> Vec3 {
    let n = (-form(x, x)).sqrt();
    scale(x, 1.0 / n)
}

/// Unit normal of the geodesic through `a` and `b`.
pub fn line_through(a: &Vec3, b: &Vec3) -> Vec3 {
    // J (a x b) is B-orthogonal to both a and b
    let c = [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ];
    let n = [-c[0], c[1], c[2]];
    scale(&n, 1.0 / form(&n, &n).sqrt())
}

/// Normal of `line` flipped if needed so that `x` is on its positive side.
pub fn orient_towards(line: &Vec3, x: &Vec3) -> Vec3 {
    if form(x, line) < 0.0 {
        scale(line, -1.0)
    } else {
        *line
    }
}

pub fn distance(x: &Vec3, y: &Vec3) -> f64 {
    // B(x - y, x - y) = 4 sinh^2(d / 2) stays accurate for nearby points
    let d = [x[0] - y[0], x[1] - y[1], x[2] - y[2]];
    2.0 * (form(&d, &d).max(0.0).sqrt() / 2.0).asinh()
}

pub fn apply(m: &Mat3, x: &Vec3) -> Vec3 {
    let mut out = [0.0; 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = row[0] * x[0] + row[1] * x[1] + row[2] * x[2];
    }
    out
}

pub fn mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Inverse of a Lorentz matrix, `J M^T J`.
pub fn lorentz_inverse(m: &Mat3) -> Mat3 {
    let sign = [-1.0, 1.0, 1.0];
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = sign[i] * m[j][i] * sign[j];
        }
    }
    out
}

/// Reflection across the geodesic with unit normal `n`.
pub fn reflection(n: &Vec3) -> Mat3 {
    let jn = [-n[0], n[1], n[2]];
    let mut out = IDENTITY;
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] -= 2.0 * n[i] * jn[j];
        }
    }
    out
}

/// Rotation about the origin by `angle`.
pub fn rotation(angle: f64) -> Mat3 {
    let (s, c) = angle.sin_cos();
    [[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]]
}

/// Reflection across the line through the origin at angle `angle`.
pub fn mirror(angle: f64) -> Mat3 {
    let (s, c) = (2.0 * angle).sin_cos();
    [[1.0, 0.0, 0.0], [0.0, c, s], [0.0, s, -c]]
}

/// Orientation-preserving isometry taking `w` to the origin without
/// rotating the direction from `w` towards the origin.
pub fn boost_to_origin(w: &Vec3) -> Mat3 {
    let r = (w[1] * w[1] + w[2] * w[2]).sqrt();
    if r < 1e-300 {
        return IDENTITY;
    }
    let (c, s) = (w[0], r);
    let u = [w[1] / r, w[2] / r];
    [
        [c, -s * u[0], -s * u[1]],
        [-s * u[0], 1.0 + (c - 1.0) * u[0] * u[0], (c - 1.0) * u[0] * u[1]],
        [-s * u[1], (c - 1.0) * u[1] * u[0], 1.0 + (c - 1.0) * u[1] * u[1]],
    ]
}

/// Direction angle of `x` seen from the origin.
pub fn polar_angle(x: &Vec3) -> f64 {
    x[2].atan2(x[1])
}

/// Point at distance `r` from the origin in direction `angle`.
pub fn polar(r: f64, angle: f64) -> Vec3 {
    [r.cosh(), r.sinh() * angle.cos(), r.sinh() * angle.sin()]
}

/// Angle at `v` between the geodesics towards `a` and `b`.
pub fn angle_at(v: &Vec3, a: &Vec3, b: &Vec3) -> f64 {
    let ta = add(a, &scale(v, form(v, a)));
    let tb = add(b, &scale(v, form(v, b)));
    let c = form(&ta, &tb) / (form(&ta, &ta) * form(&tb, &tb)).sqrt();
    c.clamp(-1.0, 1.0).acos()
}

/// Poincare-disk coordinates of a hyperboloid point.
pub fn to_disk(x: &Vec3) -> [f64; 2] {
    [x[1] / (1.0 + x[0]), x[2] / (1.0 + x[0])]
}

/// Hyperboloid point of a Poincare-disk point.
pub fn from_disk(z: [f64; 2]) -> Vec3 {
    let r2 = z[0] * z[0] + z[1] * z[1];
    let d = 1.0 - r2;
    [(1.0 + r2) / d, 2.0 * z[0] / d, 2.0 * z[1] / d]
}

/// Reduces an angle to `[0, 2 pi)`.
pub fn wrap(angle: f64) -> f64 {
    angle.rem_euclid(std::f64::consts::TAU)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn boosts_and_inverses() {
        let w = polar(1.3, 0.7);
        let l = boost_to_origin(&w);
        let o = apply(&l, &w);
        assert_abs_diff_eq!(o[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(o[1], 0.0, epsilon = 1e-12);
        let back = apply(&lorentz_inverse(&l), &o);
        for i in 0..3 {
            assert_abs_diff_eq!(back[i], w[i], epsilon = 1e-12);
        }
        // the direction towards the origin is preserved
        let to_origin = apply(&l, &ORIGIN);
        assert_abs_diff_eq!(wrap(polar_angle(&to_origin)), wrap(0.7 + std::f64::consts::PI), epsilon = 1e-12);
    }

    #[test]
    fn reflections_are_involutions() {
        let n = line_through(&polar(0.5, 0.1), &polar(0.8, 2.0));
        let r = reflection(&n);
        let x = polar(0.9, -1.1);
        let y = apply(&r, &apply(&r, &x));
        for i in 0..3 {
            assert_abs_diff_eq!(x[i], y[i], epsilon = 1e-12);
        }
        assert_abs_diff_eq!(form(&apply(&r, &x), &n), -form(&x, &n), epsilon = 1e-12);
    }

    #[test]
    fn disk_round_trip() {
        let x = polar(2.0, 1.0);
        let y = from_disk(to_disk(&x));
        for i in 0..3 {
            assert_abs_diff_eq!(x[i], y[i], epsilon = 1e-10);
        }
    }

    #[test]
    fn distance_to_line() {
        // the line through two points on the x1-axis contains the origin
        let n = line_through(&polar(1.0, 0.0), &polar(2.0, std::f64::consts::PI));
        assert_abs_diff_eq!(form(&ORIGIN, &n), 0.0, epsilon = 1e-12);
        let x = polar(0.7, std::f64::consts::FRAC_PI_2);
        assert_abs_diff_eq!(form(&x, &n).abs(), 0.7f64.sinh(), epsilon = 1e-12);
    }
}
