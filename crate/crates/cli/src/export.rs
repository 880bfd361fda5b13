//! Mesh and point-cloud writers. Numbers are printed in C `%.12e` style so that identical
//! runs give identical bytes.

use std::io::{self, Write};

/// `x` as C's `printf("%.12e", x)`: twelve fractional digits, signed exponent of at least two digits.
pub fn fmt_e(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let e: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
}

/// Sampled surface: parameters and images in row-major grid order, first axis outermost.
pub struct Samples<'a> {
    pub name: &'a str,
    pub shape: &'a [usize],
    pub params: &'a [Vec<f64>],
    pub points: &'a [Vec<f64>],
}

impl Samples<'_> {
    /// Triangles of the quad grid with 0-based indices; each quad
    /// `(i,j), (i+1,j), (i+1,j+1), (i,j+1)` is cut along `(i,j)`–`(i+1,j+1)`.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let [n0, n1] = [self.shape[0], self.shape[1]];
        let v = |i: usize, j: usize| i * n1 + j;
        let mut out = Vec::with_capacity(2 * n0.saturating_sub(1) * n1.saturating_sub(1));
        for i in 0..n0.saturating_sub(1) {
            for j in 0..n1.saturating_sub(1) {
                out.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
                out.push([v(i, j), v(i + 1, j + 1), v(i, j + 1)]);
            }
        }
        out
    }
}

pub fn write_obj<W: Write>(w: &mut W, s: &Samples) -> io::Result<()> {
    writeln!(w, "# subgeom {}", s.name)?;
    writeln!(w, "# grid {}", shape_label(s.shape))?;
    for p in s.points {
        writeln!(w, "v {} {} {}", fmt_e(p[0]), fmt_e(p[1]), fmt_e(p[2]))?;
    }
    for t in s.triangles() {
        writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
    }
    Ok(())
}

pub fn write_ply<W: Write>(w: &mut W, s: &Samples) -> io::Result<()> {
    let tris = s.triangles();
    writeln!(w, "ply")?;
    writeln!(w, "format ascii 1.0")?;
    writeln!(w, "comment subgeom {}", s.name)?;
    writeln!(w, "element vertex {}", s.points.len())?;
    for axis in ["x", "y", "z"] {
        writeln!(w, "property double {axis}")?;
    }
    writeln!(w, "element face {}", tris.len())?;
    writeln!(w, "property list uchar int vertex_indices")?;
    writeln!(w, "end_header")?;
    for p in s.points {
        writeln!(w, "{} {} {}", fmt_e(p[0]), fmt_e(p[1]), fmt_e(p[2]))?;
    }
    for t in tris {
        writeln!(w, "3 {} {} {}", t[0], t[1], t[2])?;
    }
    Ok(())
}

/// Columns `u1..um, x1..xN`.
pub fn write_csv<W: Write>(w: &mut W, s: &Samples) -> io::Result<()> {
    let m = s.params.first().map_or(0, Vec::len);
    let n = s.points.first().map_or(0, Vec::len);
    let header: Vec<String> = (1..=m).map(|i| format!("u{i}")).chain((1..=n).map(|i| format!("x{i}"))).collect();
    writeln!(w, "{}", header.join(","))?;
    for (u, x) in s.params.iter().zip(s.points) {
        let row: Vec<String> = u.iter().chain(x).map(|&v| fmt_e(v)).collect();
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn shape_label(shape: &[usize]) -> String {
    shape.iter().map(usize::to_string).collect::<Vec<_>>().join("x")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_style_exponent() {
        assert_eq!(fmt_e(0.0), "0.000000000000e+00");
        assert_eq!(fmt_e(1.0), "1.000000000000e+00");
        assert_eq!(fmt_e(-2.5e-7), "-2.500000000000e-07");
        assert_eq!(fmt_e(6.02214076e123), "6.022140760000e+123");
        assert_eq!(fmt_e(f64::NAN), "nan");
    }

    #[test]
    fn quads_split_along_the_rising_diagonal() {
        let pts = vec![vec![0.0; 3]; 6];
        let s = Samples { name: "t", shape: &[2, 3], params: &[], points: &pts };
        assert_eq!(s.triangles(), vec![[0, 3, 4], [0, 4, 1], [1, 4, 5], [1, 5, 2]]);
        let mut buf = Vec::new();
        write_obj(&mut buf, &s).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 6);
        assert!(text.contains("\nf 1 4 5\n"));
    }
}
