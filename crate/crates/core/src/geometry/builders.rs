//! Constructors for the domain families used by the experiments.

use super::dihedral::{make_dihedral, DihedralShape};
use super::domain::{AdmissibleDomain, MappedCell, VolumeCell, DEFAULT_CURVED_ORDER};
use super::edge::{Edge, EdgeCurve, EdgeSide};
use super::face::{Face, FaceKind, ParamMap, ParametricPatch};
use crate::error::{Error, Result};
use crate::tensor::{Poly, Vec3};

/// Tolerance for matching edge shapes against a requested dihedron.
pub const SHAPE_MATCH_TOL: f64 = 1e-9;

/// Axis-aligned box `[a, b]`. Faces are labelled `x1-`, `x1+`, ... .
pub fn build_box(a: Vec3, b: Vec3) -> Result<AdmissibleDomain> {
    for i in 0..3 {
        if !(b[i] > a[i]) {
            return Err(Error::InvalidParameter(format!(
                "box corner b must exceed a in every coordinate (axis {})",
                i + 1
            )));
        }
    }
    let v: Vec<Vec3> = (0..8)
        .map(|i| {
            Vec3::new(
                if i & 1 == 0 { a[0] } else { b[0] },
                if i & 2 == 0 { a[1] } else { b[1] },
                if i & 4 == 0 { a[2] } else { b[2] },
            )
        })
        .collect();
    let loops = vec![
        vec![0, 4, 6, 2],
        vec![1, 3, 7, 5],
        vec![0, 1, 5, 4],
        vec![2, 6, 7, 3],
        vec![0, 2, 3, 1],
        vec![4, 5, 7, 6],
    ];
    let mut dom = AdmissibleDomain::from_polyhedron(&v, &loops, "box")?;
    for (f, l) in dom.faces.iter_mut().zip(["x1-", "x1+", "x2-", "x2+", "x3-", "x3+"]) {
        f.label = Some(l.to_string());
    }
    Ok(dom)
}

/// Tetrahedron with the face `S` (normal `n`) through the origin, faces `S1`,
/// `S2`, `S3` normal to `−e1`, `−e2`, `−e3`, height `h`, and edges `L1`, `L2`,
/// `L3` along `e1`, `e2`, `e3` from the apex `−h n`.
pub fn build_cauchy_tetrahedron(n: Vec3, h: f64) -> Result<AdmissibleDomain> {
    let n = n.require_unit()?;
    if (0..3).any(|i| !(n[i] > 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "tetrahedron normal needs positive components, got {:?}",
            n.0
        )));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "tetrahedron height must be positive, got {h}"
        )));
    }
    let p = n * (-h);
    let mut v = vec![p];
    for i in 0..3 {
        v.push(p + Vec3::basis(i) * (h / n[i]));
    }
    let loops = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
    let mut dom = AdmissibleDomain::from_polyhedron(&v, &loops, "cauchy_tetrahedron")?;
    for (f, l) in dom.faces.iter_mut().zip(["S", "S1", "S2", "S3"]) {
        f.label = Some(l.to_string());
    }
    for e in dom.edges.iter_mut() {
        if let EdgeCurve::Segment { a, b } = e.curve {
            for i in 1..=3 {
                if (a == v[0] && b == v[i]) || (a == v[i] && b == v[0]) {
                    e.label = Some(format!("L{i}"));
                }
            }
        }
    }
    Ok(dom)
}

/// Right prism over a counter-clockwise profile in the `(e1, e3)` plane of
/// `frame`, extruded along `e2` over `[0, length]`.
pub fn build_prism(profile: &[(f64, f64)], frame: [Vec3; 3], length: f64, label: &str) -> Result<AdmissibleDomain> {
    let m = profile.len();
    if m < 3 {
        return Err(Error::InvalidGeometry("prism profile needs 3 vertices".into()));
    }
    if !(length > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "prism length must be positive, got {length}"
        )));
    }
    let [e1, e2, e3] = frame;
    let mut v: Vec<Vec3> = profile.iter().map(|&(u, w)| e1 * u + e3 * w).collect();
    let top: Vec<Vec3> = v.iter().map(|&p| p + e2 * length).collect();
    v.extend(top);
    let mut loops = vec![(0..m).collect::<Vec<_>>(), (m..2 * m).rev().collect()];
    for i in 0..m {
        let j = (i + 1) % m;
        loops.push(vec![i, m + i, m + j, j]);
    }
    let mut dom = AdmissibleDomain::from_polyhedron(&v, &loops, label)?;
    dom.faces[0].label = Some("cap0".into());
    dom.faces[1].label = Some("cap1".into());
    Ok(dom)
}

/// Frame adapted to a dihedron: `e2 = τ`, `e3` along `n1 + n2`, `e1 = e2 × e3`,
/// with `n1 = a e1 + b e3` and `n2 = −a e1 + b e3`, `b > 0`. Returns the frame
/// and `(a, b)`.
pub fn dihedral_frame(d: &DihedralShape) -> Result<([Vec3; 3], f64, f64)> {
    let e2 = d.tau();
    let e3 = (d.n1() + d.n2()).normalized()?;
    let e1 = e2.cross(e3);
    let a = d.n1().dot(e1);
    let b = d.n1().dot(e3);
    if !(b > 0.0) || a == 0.0 {
        return Err(Error::DegenerateDihedral(
            "flat or folded shape: no adapted frame".into(),
        ));
    }
    Ok(([e1, e2, e3], a, b))
}

fn label_matching_edges(
    dom: &mut AdmissibleDomain,
    shapes: &[(&DihedralShape, &str)],
    rest: Option<&str>,
) -> Result<()> {
    for i in 0..dom.edges.len() {
        let s = dom.edge_shape(i)?;
        let hit = shapes.iter().find(|(d, _)| s.matches(d, SHAPE_MATCH_TOL));
        dom.edges[i].label = match (hit, rest) {
            (Some((_, l)), _) => Some(l.to_string()),
            (None, Some(r)) => Some(r.to_string()),
            (None, None) => None,
        };
    }
    Ok(())
}

/// Slab of `N` parallel V-grooves whose facets have the normals of `d`.
///
/// Pitch and depth scale as `N⁻²`, the footprint as `N⁻¹ × N⁻¹` and the
/// thickness as `N⁻²`. Edges of shape `(n1, n2, τ)` are labelled `L1`, of
/// shape `(n2, n1, τ)` `L2`, and all others `L3`.
pub fn build_grooved_slab(n: usize, d: &DihedralShape) -> Result<AdmissibleDomain> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "groove count must be at least 2, got {n}"
        )));
    }
    let (frame, a, b) = dihedral_frame(d)?;
    let nf = n as f64;
    let h = 1.0 / (nf * nf);
    let pitch = 2.0 * b / (a.abs() * nf * nf);
    let width = nf * pitch;
    let mut profile = vec![(0.0, 0.0), (width, 0.0), (width, h)];
    for k in (0..n).rev() {
        let x0 = k as f64 * pitch;
        profile.push((x0 + 0.5 * pitch, 2.0 * h));
        profile.push((x0, h));
    }
    let mut dom = build_prism(&profile, frame, 1.0 / nf, "grooved_slab")?;
    let swapped = make_dihedral(d.n2(), d.n1(), d.tau())?;
    label_matching_edges(&mut dom, &[(d, "L1"), (&swapped, "L2")], Some("L3"))?;
    Ok(dom)
}

/// The dihedron `d` with its edge translated to height `ε²` along the bisector,
/// intersected with `[−cε², cε²] × [0, ℓε] × [0, 2ε²]` in the adapted frame.
/// The edge along the apex is labelled `L`.
pub fn build_wedge(d: &DihedralShape, c: f64, ell: f64, eps: f64) -> Result<AdmissibleDomain> {
    for (name, v) in [("c", c), ("length", ell), ("epsilon", eps)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "wedge {name} must be positive, got {v}"
            )));
        }
    }
    let (frame, a, b) = dihedral_frame(d)?;
    let e2 = eps * eps;
    let half = c * e2;
    let slope = a.abs() / b;
    // Apex offset where the facets leave the box horizontally.
    let reach = e2 / slope;
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * y.abs().max(1e-300);
    let profile: Vec<(f64, f64)> = if a < 0.0 {
        if reach <= half || close(reach, half) {
            vec![(-reach, 0.0), (reach, 0.0), (0.0, e2)]
        } else {
            let z = e2 - slope * half;
            vec![(-half, 0.0), (half, 0.0), (half, z), (0.0, e2), (-half, z)]
        }
    } else if reach < half && !close(reach, half) {
        vec![
            (-half, 0.0),
            (half, 0.0),
            (half, 2.0 * e2),
            (reach, 2.0 * e2),
            (0.0, e2),
            (-reach, 2.0 * e2),
            (-half, 2.0 * e2),
        ]
    } else {
        let z = e2 + slope * half;
        vec![(-half, 0.0), (half, 0.0), (half, z), (0.0, e2), (-half, z)]
    };
    let mut dom = build_prism(&profile, frame, ell * eps, "wedge")?;
    label_matching_edges(&mut dom, &[(d, "L")], None)?;
    if dom.edges_by_label("L").len() != 1 {
        return Err(Error::Containment("wedge apex edge not found".into()));
    }
    Ok(dom)
}

/// Intersection of the cube `[−1, 1]³` with the half-spaces `m·x ≤ d`.
pub fn clip_cube(planes: &[(Vec3, f64)]) -> Result<AdmissibleDomain> {
    let cube = build_box(Vec3::new(-1.0, -1.0, -1.0), Vec3::new(1.0, 1.0, 1.0))?;
    let mut polys: Vec<Vec<Vec3>> = cube
        .faces
        .iter()
        .map(|f| match &f.kind {
            FaceKind::Planar(p) => p.vertices().to_vec(),
            FaceKind::Patch(_) => unreachable!("box faces are planar"),
        })
        .collect();
    for &(m, d) in planes {
        let m = m.require_unit()?;
        let mut next = Vec::new();
        let mut cap: Vec<Vec3> = Vec::new();
        for poly in &polys {
            let (clipped, cuts) = clip_polygon(poly, m, d);
            cap.extend(cuts);
            if clipped.len() >= 3 {
                next.push(clipped);
            }
        }
        let cap = dedupe(cap, 1e-12);
        if cap.len() >= 3 {
            let c = cap.iter().fold(Vec3::ZERO, |acc, p| acc + *p) * (1.0 / cap.len() as f64);
            let [u, w, _] = crate::tensor::frame_from_normal(m)?;
            let mut sorted = cap;
            sorted.sort_by(|p, q| {
                let ap = (*p - c).dot(w).atan2((*p - c).dot(u));
                let aq = (*q - c).dot(w).atan2((*q - c).dot(u));
                ap.total_cmp(&aq)
            });
            next.push(sorted);
        }
        polys = next;
    }
    if polys.len() < 4 {
        return Err(Error::InvalidGeometry("clipped polyhedron is empty".into()));
    }
    let mut verts: Vec<Vec3> = Vec::new();
    let tol = 1e-9;
    let mut loops = Vec::new();
    for poly in &polys {
        let mut lp: Vec<usize> = Vec::new();
        for p in poly {
            let idx = match verts.iter().position(|q| (*q - *p).max_abs() <= tol) {
                Some(i) => i,
                None => {
                    verts.push(*p);
                    verts.len() - 1
                }
            };
            if lp.last() != Some(&idx) {
                lp.push(idx);
            }
        }
        while lp.len() > 1 && lp.first() == lp.last() {
            lp.pop();
        }
        if lp.len() >= 3 {
            loops.push(lp);
        }
    }
    AdmissibleDomain::from_polyhedron(&verts, &loops, "clipped_cube")
}

fn clip_polygon(poly: &[Vec3], m: Vec3, d: f64) -> (Vec<Vec3>, Vec<Vec3>) {
    let mut out = Vec::new();
    let mut cuts = Vec::new();
    let side = |p: Vec3| m.dot(p) - d;
    for i in 0..poly.len() {
        let p = poly[i];
        let q = poly[(i + 1) % poly.len()];
        let (sp, sq) = (side(p), side(q));
        if sp <= 0.0 {
            out.push(p);
            if sp == 0.0 {
                cuts.push(p);
            }
        }
        if (sp < 0.0 && sq > 0.0) || (sp > 0.0 && sq < 0.0) {
            // Same bits whichever face walks the edge.
            let (a, b, sa, sb) = if p.0 < q.0 { (p, q, sp, sq) } else { (q, p, sq, sp) };
            let x = a + (b - a) * (sa / (sa - sb));
            out.push(x);
            cuts.push(x);
        }
    }
    (out, cuts)
}

fn dedupe(points: Vec<Vec3>, tol: f64) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::new();
    for p in points {
        if !out.iter().any(|q| (*q - p).max_abs() <= tol) {
            out.push(p);
        }
    }
    out
}

/// Region `{z0 ≤ x3 ≤ φ(x1, x2)}` over the rectangle `[lo, hi]`, with a curved
/// top face (labelled `top`), ruled side walls and a flat bottom.
pub fn build_graph_patch_box(phi: &Poly, lo: [f64; 2], hi: [f64; 2], z0: f64) -> Result<AdmissibleDomain> {
    if !(hi[0] > lo[0] && hi[1] > lo[1]) {
        return Err(Error::InvalidParameter(
            "graph footprint must have positive extent".into(),
        ));
    }
    if phi.degree_in(2) > 0 {
        return Err(Error::InvalidParameter(
            "height polynomial must not depend on x3".into(),
        ));
    }
    for i in 0..=8 {
        for j in 0..=8 {
            let x1 = lo[0] + (hi[0] - lo[0]) * i as f64 / 8.0;
            let x2 = lo[1] + (hi[1] - lo[1]) * j as f64 / 8.0;
            if !(phi.eval([x1, x2, 0.0]) > z0) {
                return Err(Error::InvalidParameter(format!(
                    "height must exceed the bottom z0 = {z0} at ({x1}, {x2})"
                )));
            }
        }
    }
    let (l1, l2) = (hi[0] - lo[0], hi[1] - lo[1]);
    let s = |c: f64, l: f64| Poly::affine(c, [l, 0.0, 0.0]);
    let k = Poly::constant;
    let restrict = |x1: Poly, x2: Poly| phi.compose(&[x1, x2, Poly::zero()]);

    // Walls as ruled patches between the bottom line and the top curve.
    let wall = |x1: Poly, x2: Poly, sigma: f64| -> Result<ParametricPatch> {
        let bottom: ParamMap = [x1.clone(), x2.clone(), k(z0)];
        let top: ParamMap = [x1.clone(), x2.clone(), restrict(x1, x2)];
        ParametricPatch::ruled(&bottom, &top, sigma)
    };
    let faces = vec![
        Face::patch(ParametricPatch::graph(phi, lo, hi, 1.0)?).with_label("top"),
        Face::planar(vec![
            Vec3::new(lo[0], lo[1], z0),
            Vec3::new(lo[0], hi[1], z0),
            Vec3::new(hi[0], hi[1], z0),
            Vec3::new(hi[0], lo[1], z0),
        ])?
        .with_label("bottom"),
        Face::patch(wall(k(lo[0]), s(lo[1], l2), -1.0)?).with_label("x1-"),
        Face::patch(wall(k(hi[0]), s(lo[1], l2), 1.0)?).with_label("x1+"),
        Face::patch(wall(s(lo[0], l1), k(lo[1]), 1.0)?).with_label("x2-"),
        Face::patch(wall(s(lo[0], l1), k(hi[1]), -1.0)?).with_label("x2+"),
    ];

    let pt = |x1: f64, x2: f64, z: f64| Vec3::new(x1, x2, z);
    let ph = |x1: f64, x2: f64| phi.eval([x1, x2, 0.0]);
    let seg = |a: Vec3, b: Vec3| EdgeCurve::Segment { a, b };
    let top_curve = |x1: Poly, x2: Poly| EdgeCurve::Curve {
        r: [x1.clone(), x2.clone(), restrict(x1, x2)],
    };
    let c = |f: usize, p0: [f64; 2], p1: [f64; 2]| EdgeSide::curved(f, p0, p1);
    let (a1, a2, b1, b2) = (lo[0], lo[1], hi[0], hi[1]);
    let raw: Vec<(EdgeCurve, EdgeSide, EdgeSide)> = vec![
        // bottom rim
        (
            seg(pt(a1, a2, z0), pt(a1, b2, z0)),
            EdgeSide::planar(1),
            c(2, [0.0, 0.0], [1.0, 0.0]),
        ),
        (
            seg(pt(b1, a2, z0), pt(b1, b2, z0)),
            EdgeSide::planar(1),
            c(3, [0.0, 0.0], [1.0, 0.0]),
        ),
        (
            seg(pt(a1, a2, z0), pt(b1, a2, z0)),
            EdgeSide::planar(1),
            c(4, [0.0, 0.0], [1.0, 0.0]),
        ),
        (
            seg(pt(a1, b2, z0), pt(b1, b2, z0)),
            EdgeSide::planar(1),
            c(5, [0.0, 0.0], [1.0, 0.0]),
        ),
        // vertical corners
        (
            seg(pt(a1, a2, z0), pt(a1, a2, ph(a1, a2))),
            c(2, [0.0, 0.0], [0.0, 1.0]),
            c(4, [0.0, 0.0], [0.0, 1.0]),
        ),
        (
            seg(pt(b1, a2, z0), pt(b1, a2, ph(b1, a2))),
            c(3, [0.0, 0.0], [0.0, 1.0]),
            c(4, [1.0, 0.0], [1.0, 1.0]),
        ),
        (
            seg(pt(a1, b2, z0), pt(a1, b2, ph(a1, b2))),
            c(2, [1.0, 0.0], [1.0, 1.0]),
            c(5, [0.0, 0.0], [0.0, 1.0]),
        ),
        (
            seg(pt(b1, b2, z0), pt(b1, b2, ph(b1, b2))),
            c(3, [1.0, 0.0], [1.0, 1.0]),
            c(5, [1.0, 0.0], [1.0, 1.0]),
        ),
        // top rim
        (
            top_curve(k(a1), s(a2, l2)),
            c(0, [0.0, 0.0], [0.0, 1.0]),
            c(2, [0.0, 1.0], [1.0, 1.0]),
        ),
        (
            top_curve(k(b1), s(a2, l2)),
            c(0, [1.0, 0.0], [1.0, 1.0]),
            c(3, [0.0, 1.0], [1.0, 1.0]),
        ),
        (
            top_curve(s(a1, l1), k(a2)),
            c(0, [0.0, 0.0], [1.0, 0.0]),
            c(4, [0.0, 1.0], [1.0, 1.0]),
        ),
        (
            top_curve(s(a1, l1), k(b2)),
            c(0, [0.0, 1.0], [1.0, 1.0]),
            c(5, [0.0, 1.0], [1.0, 1.0]),
        ),
    ];
    let mut edges = Vec::with_capacity(raw.len());
    for (curve, s1, s2) in raw {
        let sides = if s1.face < s2.face { [s1, s2] } else { [s2, s1] };
        let mut edge = Edge::new(curve, 1.0, sides);
        edge.orientation = orientation_for(&edge, &faces)?;
        edges.push(edge);
    }

    let zmap = &k(z0) + &(&Poly::var(2) * &(&restrict(s(a1, l1), Poly::affine(a2, [0.0, l2, 0.0])) - &k(z0)));
    let map = [s(a1, l1), Poly::affine(a2, [0.0, l2, 0.0]), zmap];
    let dom = AdmissibleDomain {
        faces,
        edges,
        cells: vec![VolumeCell::Mapped(MappedCell::new(map)?)],
        label: "graph_patch_box".into(),
        curved_order: DEFAULT_CURVED_ORDER,
    };
    dom.validate()?;
    Ok(dom)
}

/// Sign making `ν1 = τ × n1` point away from the interior of face 1.
fn orientation_for(edge: &Edge, faces: &[Face]) -> Result<f64> {
    let u = 0.5;
    let x = edge.curve.point(u);
    let tau = edge.curve.derivative(u);
    let side = &edge.sides[0];
    let (n1, inward) = match (&faces[side.face].kind, side.params) {
        (FaceKind::Planar(p), _) => {
            let c = p.vertices().iter().fold(Vec3::ZERO, |acc, v| acc + *v) * (1.0 / p.vertices().len() as f64);
            (p.normal(), c - x)
        }
        (FaceKind::Patch(patch), Some((p0, p1))) => {
            let st = [0.5 * (p0[0] + p1[0]), 0.5 * (p0[1] + p1[1])];
            let pp = patch.point(st[0], st[1]);
            (pp.normal, pp.r_s * (0.5 - st[0]) + pp.r_t * (0.5 - st[1]))
        }
        (FaceKind::Patch(_), None) => return Err(Error::InvalidGeometry("curved side without parameters".into())),
    };
    Ok(if tau.cross(n1).dot(inward) > 0.0 { -1.0 } else { 1.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn unit_cube_closure_and_volume() {
        let cube = build_box(Vec3::ZERO, Vec3::new(1.0, 1.0, 1.0)).unwrap();
        assert_eq!(cube.faces.len(), 6);
        assert_eq!(cube.edges.len(), 12);
        assert!((cube.volume().unwrap() - 1.0).abs() < 1e-15);
        let cl = cube.integrate_boundary(0, |p| p.normal).unwrap();
        assert!(cl.max_abs() < 1e-15);
        for i in 0..12 {
            let a = cube.edge_shape(i).unwrap().angle().unwrap();
            assert!((a - 1.5 * std::f64::consts::PI).abs() < 1e-12);
        }
    }

    #[test]
    fn tetrahedron_edge_shapes() {
        let n = Vec3::new(1.0, 1.0, 1.0) * (1.0 / 3f64.sqrt());
        let t = build_cauchy_tetrahedron(n, 1.0).unwrap();
        let e = Vec3::basis;
        let f = [
            make_dihedral(-e(1), -e(2), e(0)).unwrap(),
            make_dihedral(-e(2), -e(0), e(1)).unwrap(),
            make_dihedral(-e(0), -e(1), e(2)).unwrap(),
        ];
        for (i, fi) in f.iter().enumerate() {
            let idx = t.edges_by_label(&format!("L{}", i + 1));
            assert_eq!(idx.len(), 1);
            assert!(t.edge_shape(idx[0]).unwrap().matches(fi, 1e-12));
        }
        let s = t.face_by_label("S").unwrap();
        assert!((t.faces[s].plane_normal().unwrap() - n).max_abs() < 1e-15);
    }

    #[test]
    fn tetrahedron_rejects_bad_input() {
        assert!(build_cauchy_tetrahedron(Vec3::new(1.0, 0.0, 0.0), 1.0).is_err());
        let n = Vec3::new(1.0, 1.0, 1.0) * (1.0 / 3f64.sqrt());
        assert!(build_cauchy_tetrahedron(n, 0.0).is_err());
    }

    #[test]
    fn convex_wedge_profile_is_a_triangle() {
        let n1 = Vec3::new(-1.0, 0.0, 1.0) * (1.0 / SQRT_2);
        let n2 = Vec3::new(1.0, 0.0, 1.0) * (1.0 / SQRT_2);
        let d = make_dihedral(n1, n2, Vec3::basis(1)).unwrap();
        let w = build_wedge(&d, 2.0, 1.0, 0.5).unwrap();
        assert_eq!(w.faces.len(), 5);
        // |V| = b ℓ ε⁵ / |a| with a = −b
        assert!((w.volume().unwrap() - 0.5f64.powi(5)).abs() < 1e-15);
        let l = w.edges_by_label("L")[0];
        assert!(w.edge_shape(l).unwrap().angle().unwrap() > std::f64::consts::PI);
    }

    #[test]
    fn reflex_wedge_builds() {
        let n1 = Vec3::new(1.0, 0.0, 1.0) * (1.0 / SQRT_2);
        let n2 = Vec3::new(-1.0, 0.0, 1.0) * (1.0 / SQRT_2);
        let d = make_dihedral(n1, n2, Vec3::basis(1)).unwrap();
        let w = build_wedge(&d, 2.0, 1.0, 0.5).unwrap();
        let l = w.edges_by_label("L")[0];
        // Convex edges measure more than π in this convention (a cube edge is 3π/2).
        assert!(w.edge_shape(l).unwrap().angle().unwrap() < std::f64::consts::PI);
    }

    #[test]
    fn graph_box_with_flat_top_matches_box() {
        let g = build_graph_patch_box(&Poly::constant(1.0), [0.0, 0.0], [1.0, 2.0], 0.0).unwrap();
        assert!((g.volume().unwrap() - 2.0).abs() < 1e-14);
        assert_eq!(g.edges.len(), 12);
    }
}
