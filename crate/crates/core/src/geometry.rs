//! Projective points and lines of F_p^n, line-preservation tests, and
//! reconstruction of linear and affine maps from their action on lines.

use std::collections::HashSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::field::{FieldError, Matrix, Space};
use crate::perm::{gl_group, matrix_perm, Perm, PermError, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("permutation does not map lines through 0 onto lines through 0")]
    PreconditionViolated,
    #[error("projective reconstruction needs n >= 3, got n = {0}")]
    DimensionTooSmall(u32),
    #[error("brute force over Sym({0}) is limited to at most 9 points")]
    DegreeTooLarge(u32),
    #[error("degree {got} does not match the space ({expected} points)")]
    WrongDegree { expected: usize, got: usize },
    #[error("brute-force count {count} disagrees with generated order {order}")]
    Inconsistent { count: usize, order: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A one-dimensional subspace, minus the zero vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    /// Member whose first nonzero coordinate is 1.
    pub rep: u32,
    /// The p−1 nonzero multiples of `rep`, sorted.
    pub members: Vec<u32>,
}

/// A permutation of the projective points, indexed as in [`ProjectiveSpace::points`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPerm(pub Perm);

impl ProjPerm {
    pub fn perm(&self) -> &Perm {
        &self.0
    }
}

/// The projective points and projective lines of a space.
#[derive(Debug, Clone)]
pub struct ProjectiveSpace {
    space: Space,
    points: Vec<ProjPoint>,
    point_of: Vec<u32>,
    lines: Vec<Vec<u32>>,
    line_set: HashSet<Vec<u32>>,
}

/// All projective points of `space`, ordered by representative index.
pub fn projective_points(space: &Space) -> Vec<ProjPoint> {
    let p = space.p();
    space
        .points()
        .filter(|&v| v != 0 && space.normalize(v) == v)
        .map(|rep| {
            let mut members: Vec<u32> = (1..p).map(|l| space.scale(l, rep)).collect();
            members.sort_unstable();
            ProjPoint { rep, members }
        })
        .collect()
}

impl ProjectiveSpace {
    pub fn new(space: &Space) -> Self {
        let points = projective_points(space);
        let mut point_of = vec![u32::MAX; space.size() as usize];
        for (k, pt) in points.iter().enumerate() {
            for &m in &pt.members {
                point_of[m as usize] = k as u32;
            }
        }
        let mut line_set: HashSet<Vec<u32>> = HashSet::new();
        let mut lines = Vec::new();
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                let plane = space.span(&[points[a].rep, points[b].rep]);
                let mut line: Vec<u32> =
                    plane.members.iter().filter(|&&x| x != 0).map(|&x| point_of[x as usize]).collect();
                line.sort_unstable();
                line.dedup();
                if line_set.insert(line.clone()) {
                    lines.push(line);
                }
            }
        }
        lines.sort();
        ProjectiveSpace { space: space.clone(), points, point_of, lines, line_set }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    /// Projective lines as sorted lists of point indices.
    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    /// Index of the projective point containing the nonzero vector `v`.
    pub fn point_of(&self, v: u32) -> Option<u32> {
        self.point_of.get(v as usize).copied().filter(|&k| k != u32::MAX)
    }

    /// The permutation `g` induces on projective points.
    pub fn projective_action(&self, g: &Perm) -> Result<ProjPerm, GeometryError> {
        self.check_degree(g)?;
        if !g.fixes(0) {
            return Err(GeometryError::PreconditionViolated);
        }
        let mut images = Vec::with_capacity(self.points.len());
        for pt in &self.points {
            let target = self.point_of[g.image(pt.rep) as usize];
            if pt.members.iter().any(|&m| self.point_of[g.image(m) as usize] != target) {
                return Err(GeometryError::PreconditionViolated);
            }
            images.push(target);
        }
        Ok(ProjPerm(Perm::from_images(images)?))
    }

    /// Whether `q` maps every projective line onto a projective line.
    pub fn preserves_projective_lines(&self, q: &ProjPerm) -> bool {
        if q.0.degree() != self.points.len() {
            return false;
        }
        self.lines.iter().all(|line| {
            let mut image: Vec<u32> = line.iter().map(|&x| q.0.image(x)).collect();
            image.sort_unstable();
            self.line_set.contains(&image)
        })
    }

    /// A linear map inducing `q`, or `None` if there is none.
    ///
    /// The image of `e_1` is the canonical representative of `q(⟨e_1⟩)`; the
    /// remaining basis images are scaled so that `e_1 + e_i` lands on
    /// `q(⟨e_1 + e_i⟩)`. The candidate is checked on every point.
    pub fn ftpg_reconstruct(&self, q: &ProjPerm) -> Result<Option<Perm>, GeometryError> {
        let space = &self.space;
        let n = space.n();
        if n < 3 {
            return Err(GeometryError::DimensionTooSmall(n));
        }
        if q.0.degree() != self.points.len() {
            return Err(GeometryError::WrongDegree { expected: self.points.len(), got: q.0.degree() });
        }
        let p = space.p();
        let image_rep = |v: u32| self.points[q.0.image(self.point_of[v as usize]) as usize].rep;
        let e1 = space.unit(0);
        let a1 = image_rep(e1);
        let mut rows = vec![space.coords(a1)];
        for i in 1..n {
            let ei = space.unit(i);
            let ai = image_rep(ei);
            let bi = image_rep(space.add(e1, ei));
            let mut scale = None;
            'solve: for alpha in 1..p {
                for beta in 1..p {
                    if space.add(space.scale(alpha, a1), space.scale(beta, ai)) == bi {
                        scale = Some(crate::field::inv_mod(alpha, p) * beta % p);
                        break 'solve;
                    }
                }
            }
            let Some(s) = scale else {
                return Ok(None);
            };
            rows.push(space.coords(space.scale(s, ai)));
        }
        let m = Matrix::from_rows(&rows, p);
        if !m.is_invertible() {
            return Ok(None);
        }
        let g = matrix_perm(space, &m);
        match self.projective_action(&g) {
            Ok(induced) if induced == *q => Ok(Some(g)),
            _ => Ok(None),
        }
    }

    fn check_degree(&self, g: &Perm) -> Result<(), GeometryError> {
        let expected = self.space.size() as usize;
        if g.degree() != expected {
            return Err(GeometryError::WrongDegree { expected, got: g.degree() });
        }
        Ok(())
    }
}

/// Calls `visit` once per affine line, as a sorted point list.
pub fn for_each_affine_line(space: &Space, mut visit: impl FnMut(&[u32]) -> bool) -> bool {
    let directions: Vec<u32> = projective_points(space).into_iter().map(|pt| pt.rep).collect();
    for a in space.points() {
        for &d in &directions {
            let line = space.affine_line(a, space.add(a, d));
            if line[0] == a && !visit(&line) {
                return false;
            }
        }
    }
    true
}

/// Whether `g` maps every affine line onto an affine line.
pub fn preserves_affine_lines(space: &Space, g: &Perm) -> bool {
    if g.degree() != space.size() as usize {
        return false;
    }
    for_each_affine_line(space, |line| {
        let mut image: Vec<u32> = line.iter().map(|&x| g.image(x)).collect();
        image.sort_unstable();
        image == space.affine_line(image[0], image[1])
    })
}

/// Splits `g` as a linear map followed by the translation by `0^g`.
///
/// Returns `(t, φ)` with `x^g = x^φ + t`, or `None` when `g` is not affine.
pub fn ftag_decompose(space: &Space, g: &Perm) -> Option<(u32, Perm)> {
    if g.degree() != space.size() as usize {
        return None;
    }
    let t = g.image(0);
    let phi_images: Vec<u32> = space.points().map(|x| space.sub(g.image(x), t)).collect();
    let rows: Vec<Vec<u32>> = (0..space.n()).map(|i| space.coords(phi_images[space.unit(i) as usize])).collect();
    let m = Matrix::from_rows(&rows, space.p());
    if !m.is_invertible() {
        return None;
    }
    let phi = matrix_perm(space, &m);
    if phi.images() != phi_images.as_slice() {
        return None;
    }
    let recomposed: Vec<u32> = space.points().map(|x| space.add(phi.image(x), t)).collect();
    (recomposed == g.images()).then_some((t, phi))
}

/// The translation `x ↦ x + t`.
pub fn translation(space: &Space, t: u32) -> Perm {
    Perm::from_images(space.points().map(|x| space.add(x, t)).collect()).expect("translations are bijections")
}

/// AGL(n, p): GL(n, p) together with the translations.
pub fn agl_group(space: &Space) -> PermGroup {
    gl_group(space).join_with(&[translation(space, 1)]).expect("consistent degrees")
}

/// Whether `a + b = c + d`.
pub fn in_relation_r(space: &Space, a: u32, b: u32, c: u32, d: u32) -> bool {
    space.add(a, b) == space.add(c, d)
}

/// The relation R = {(a, b, c, d) : a + b = c + d}, in lexicographic order.
pub fn relation_r(space: &Space) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in space.points() {
        for b in space.points() {
            for c in space.points() {
                out.push([a, b, c, space.sub(space.add(a, b), c)]);
            }
        }
    }
    out
}

/// Whether `g` maps R into itself.
pub fn preserves_relation_r(space: &Space, g: &Perm) -> bool {
    space.points().all(|a| {
        space.points().all(|b| {
            let s = space.add(a, b);
            let gs = space.add(g.image(a), g.image(b));
            space.points().all(|c| space.add(g.image(c), g.image(space.sub(s, c))) == gs)
        })
    })
}

/// The automorphism group of (V, R), found by testing every permutation of V.
pub fn brute_aut_of_r(space: &Space) -> Result<PermGroup, GeometryError> {
    let d = space.size();
    if d > 9 {
        return Err(GeometryError::DegreeTooLarge(d));
    }
    let total: u64 = (1..=d as u64).product();
    let chunk = 5040u64;
    let chunks: Vec<u64> = (0..total.div_ceil(chunk)).collect();
    let mut members: Vec<Perm> = chunks
        .par_iter()
        .flat_map_iter(|&c| {
            (c * chunk..((c + 1) * chunk).min(total))
                .map(|r| Perm::unrank(d as usize, r))
                .filter(|g| preserves_relation_r(space, g))
                .collect::<Vec<_>>()
        })
        .collect();
    members.sort();
    let mut group = PermGroup::trivial(d as usize);
    for g in &members {
        if !group.contains(g) {
            group = group.join_with(std::slice::from_ref(g))?;
        }
    }
    if *group.order() != members.len().into() {
        return Err(GeometryError::Inconsistent { count: members.len(), order: group.order().to_string() });
    }
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::sym_fixing_zero;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn space(p: u32, n: u32) -> Space {
        Space::new(p, n).unwrap()
    }

    /// The triple form of line preservation: L0 ⊆ L1 + L2 iff the same holds for the images.
    fn triple_oracle(pg: &ProjectiveSpace, q: &ProjPerm) -> bool {
        let s = pg.space();
        let pts = pg.points();
        let inside = |a: usize, b: usize, c: usize| s.span(&[pts[b].rep, pts[c].rep]).contains(pts[a].rep);
        let k = pts.len();
        (0..k).all(|a| {
            (0..k).all(|b| {
                (0..k).all(|c| {
                    let img = |x: usize| q.0.image(x as u32) as usize;
                    inside(a, b, c) == inside(img(a), img(b), img(c))
                })
            })
        })
    }

    #[test]
    fn point_counts() {
        assert_eq!(projective_points(&space(3, 2)).len(), 4);
        assert_eq!(projective_points(&space(3, 3)).len(), 13);
        assert_eq!(projective_points(&space(5, 2)).len(), 6);
        let pg = ProjectiveSpace::new(&space(3, 3));
        assert_eq!(pg.lines().len(), 13);
        assert!(pg.lines().iter().all(|l| l.len() == 4));
        assert_eq!(pg.points()[0], ProjPoint { rep: 1, members: vec![1, 2] });
    }

    #[test]
    fn projective_action_examples() {
        let v = space(3, 2);
        let pg = ProjectiveSpace::new(&v);
        let id = pg.projective_action(&Perm::identity(9)).unwrap();
        assert!(id.0.is_identity());
        let minus = matrix_perm(&v, &Matrix::from_rows(&[vec![2, 0], vec![0, 2]], 3));
        assert!(pg.projective_action(&minus).unwrap().0.is_identity());
        let swap = matrix_perm(&v, &Matrix::from_rows(&[vec![0, 1], vec![1, 0]], 3));
        let q = pg.projective_action(&swap).unwrap();
        // points by rep: (1,0)=1, (0,1)=3, (1,1)=4, (1,2)=7; the swap exchanges the first two
        assert_eq!(q.0.cycles(), vec![vec![0, 1]]);
        let split = Perm::from_cycles(9, &[&[1, 3]]).unwrap();
        assert_eq!(pg.projective_action(&split), Err(GeometryError::PreconditionViolated));
    }

    #[test]
    fn gl_elements_preserve_lines() {
        let v = space(3, 2);
        let pg = ProjectiveSpace::new(&v);
        for g in gl_group(&v).elements() {
            assert!(pg.preserves_projective_lines(&pg.projective_action(&g).unwrap()));
            assert!(preserves_affine_lines(&v, &g));
        }
        let w = space(3, 3);
        let pg3 = ProjectiveSpace::new(&w);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let gl3 = gl_group(&w);
        for _ in 0..50 {
            let q = pg3.projective_action(&gl3.random_element(&mut rng)).unwrap();
            assert!(pg3.preserves_projective_lines(&q));
            assert!(triple_oracle(&pg3, &q));
        }
    }

    #[test]
    fn line_test_agrees_with_triple_test() {
        let pg = ProjectiveSpace::new(&space(3, 3));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut rejected = 0;
        for _ in 0..40 {
            let a = rng.gen_range(0..13u32);
            let b = (a + rng.gen_range(1..13u32)) % 13;
            let q = ProjPerm(Perm::from_cycles(13, &[&[a, b]]).unwrap());
            let line = pg.preserves_projective_lines(&q);
            assert_eq!(line, triple_oracle(&pg, &q));
            rejected += usize::from(!line);
        }
        assert_eq!(rejected, 40);
    }

    #[test]
    fn line_preservation_closed_under_products() {
        let w = space(3, 3);
        let pg = ProjectiveSpace::new(&w);
        let gl3 = gl_group(&w);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let q1 = pg.projective_action(&gl3.random_element(&mut rng)).unwrap();
            let q2 = pg.projective_action(&gl3.random_element(&mut rng)).unwrap();
            assert!(pg.preserves_projective_lines(&ProjPerm(q1.0.then(&q2.0))));
            assert!(pg.preserves_projective_lines(&ProjPerm(q1.0.inverse())));
        }
    }

    #[test]
    fn ftpg_roundtrip() {
        let w = space(3, 3);
        let pg = ProjectiveSpace::new(&w);
        let id = ProjPerm(Perm::identity(13));
        assert!(pg.ftpg_reconstruct(&id).unwrap().unwrap().is_identity());
        let gl3 = gl_group(&w);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let g = gl3.random_element(&mut rng);
            let q = pg.projective_action(&g).unwrap();
            let h = pg.ftpg_reconstruct(&q).unwrap().expect("linear maps are reconstructed");
            let ratio = h.then(&g.inverse());
            let scalar = ratio.image(1);
            assert!(w.points().all(|x| ratio.image(x) == w.scale(scalar, x)));
            assert_eq!(pg.points()[q.0.image(0) as usize].rep, h.image(1));
        }
        let bad = ProjPerm(Perm::from_cycles(13, &[&[0, 5]]).unwrap());
        assert_eq!(pg.ftpg_reconstruct(&bad).unwrap(), None);
        let small = ProjectiveSpace::new(&space(3, 2));
        assert_eq!(small.ftpg_reconstruct(&ProjPerm(Perm::identity(4))), Err(GeometryError::DimensionTooSmall(2)));
    }

    #[test]
    fn plane_counterexample() {
        // with one projective line every permutation preserves lines
        let v = space(5, 2);
        let pg = ProjectiveSpace::new(&v);
        assert_eq!(pg.lines().len(), 1);
        let gens: Vec<Perm> = gl_group(&v).gens().iter().map(|g| pg.projective_action(g).unwrap().0).collect();
        let pgl = PermGroup::generate(&gens).unwrap();
        assert_eq!(*pgl.order(), BigUint::from(120u32));
        let mut induced = 0;
        for r in 0..720 {
            let q = ProjPerm(Perm::unrank(6, r));
            assert!(pg.preserves_projective_lines(&q));
            induced += usize::from(pgl.contains(&q.0));
        }
        assert_eq!(induced, 120);
    }

    #[test]
    fn affine_lines() {
        let v = space(3, 2);
        let mut count = 0;
        for_each_affine_line(&v, |_| {
            count += 1;
            true
        });
        assert_eq!(count, 12);
        for t in v.points() {
            assert!(preserves_affine_lines(&v, &translation(&v, t)));
        }
        assert!(!preserves_affine_lines(&v, &Perm::from_cycles(9, &[&[0, 1]]).unwrap()));
    }

    #[test]
    fn ftag_examples() {
        let v = space(3, 2);
        let t = translation(&v, 5);
        let (w, phi) = ftag_decompose(&v, &t).unwrap();
        assert_eq!(w, 5);
        assert!(phi.is_identity());
        for g in gl_group(&v).gens() {
            assert_eq!(ftag_decompose(&v, g), Some((0, g.clone())));
        }
        let w3 = space(3, 3);
        let gl3 = gl_group(&w3);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..50 {
            let phi = gl3.random_element(&mut rng);
            let t = rng.gen_range(0..27);
            let g = phi.then(&translation(&w3, t));
            assert_eq!(ftag_decompose(&w3, &g), Some((t, phi)));
        }
        assert_eq!(ftag_decompose(&v, &Perm::from_cycles(9, &[&[0, 1]]).unwrap()), None);
    }

    #[test]
    fn ftag_matches_line_test_and_membership() {
        let v = space(3, 2);
        let agl = agl_group(&v);
        let sym0 = sym_fixing_zero(9);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for k in 0..300 {
            let lin = if k % 2 == 0 { agl.random_element(&mut rng) } else { sym0.random_element(&mut rng) };
            let g = lin.then(&translation(&v, rng.gen_range(0..9)));
            let dec = ftag_decompose(&v, &g).is_some();
            assert_eq!(dec, preserves_affine_lines(&v, &g));
            assert_eq!(dec, agl.contains(&g));
        }
    }

    #[test]
    fn agl_orders() {
        let v = space(3, 2);
        let agl = agl_group(&v);
        assert_eq!(*agl.order(), BigUint::from(432u32));
        assert!(agl.pointwise_stabilizer(&[0]).unwrap().equals(&gl_group(&v)).unwrap());
        assert_eq!(*agl_group(&space(3, 3)).order(), BigUint::from(303_264u32));
    }

    #[test]
    fn relation_r_examples() {
        let v = space(3, 2);
        let r = relation_r(&v);
        assert_eq!(r.len(), 729);
        for a in v.points() {
            for b in v.points() {
                assert!(in_relation_r(&v, a, b, b, a));
            }
            assert!(in_relation_r(&v, 0, 0, a, v.neg(a)));
        }
        assert!(r.iter().all(|&[a, b, c, d]| in_relation_r(&v, a, b, c, d)));
        assert_eq!(brute_aut_of_r(&space(3, 3)).unwrap_err(), GeometryError::DegreeTooLarge(27));
    }

    #[test]
    fn brute_aut_of_r_on_a_line() {
        let v = space(5, 1);
        let aut = brute_aut_of_r(&v).unwrap();
        assert!(aut.equals(&agl_group(&v)).unwrap());
        assert_eq!(*aut.order(), BigUint::from(20u32));
    }
}
