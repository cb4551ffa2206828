//! Named property suites, each checked on exact random or exhaustive
//! instances. A failing check carries the first counterexample found.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::classify::{
    a_k_set, acl_pair, build_g_nh, catalog, extract_h, extract_n, g_nh_order, g_star, in_g_nh, normal_pairs, AkShape,
    CatalogOptions, ClassifyError, SigmaGroup, DEFAULT_AK_BUDGET,
};
use crate::field::{inv_mod, FieldError, Space};
use crate::gamma::{gamma_subgroups, labelling_from_reps, GammaError, GammaSubgroup, LabelledSpace};
use crate::geometry::{
    agl_group, brute_aut_of_r, ftag_decompose, preserves_affine_lines, preserves_relation_r, GeometryError, ProjPerm,
    ProjectiveSpace,
};
use crate::interval::{cross_check, enumerate_overgroups, IntervalError, DEFAULT_MAX_POINTS};
use crate::perm::{gl_group, sym_fixing_zero, sym_group, Perm, PermError, PermGroup};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("suite {suite} does not run at p={p}, n={n}: {reason}")]
    Unsupported { suite: &'static str, p: u32, n: u32, reason: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    SigmaLaws,
    Geometry,
    Acl,
    Akset,
    GnhOrder,
    Interval,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::SigmaLaws, Suite::Geometry, Suite::Acl, Suite::Akset, Suite::GnhOrder, Suite::Interval];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::SigmaLaws => "sigma-laws",
            Suite::Geometry => "geometry",
            Suite::Acl => "acl",
            Suite::Akset => "akset",
            Suite::GnhOrder => "gnh-order",
            Suite::Interval => "interval",
        }
    }

    /// Accepts every [`Suite::as_str`] name and `sigma` for the σ suite.
    pub fn parse(name: &str) -> Result<Suite, VerifyError> {
        match name {
            "sigma" => Ok(Suite::SigmaLaws),
            _ => Suite::ALL
                .into_iter()
                .find(|s| s.as_str() == name)
                .ok_or_else(|| VerifyError::UnknownSuite(name.into())),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random instances per law in the σ suite; other suites scale from it.
    pub instances: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: 0, instances: 1000 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub instances: usize,
    pub counterexample: Option<Value>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check { name: name.into(), instances: 0, counterexample: None }
    }

    fn record(&mut self, ok: bool, dump: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(dump());
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "instances": self.instances, "passed": self.passed(), "counterexample": self.counterexample})
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: Suite,
    pub p: u32,
    pub n: u32,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.as_str(),
            "p": self.p,
            "n": self.n,
            "passed": self.passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

pub fn run_suite(suite: Suite, space: &Space, options: &VerifyOptions) -> Result<SuiteReport, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut notes = Vec::new();
    let checks = match suite {
        Suite::SigmaLaws => sigma_laws(space, options.instances, &mut rng)?,
        Suite::Geometry => geometry(space, options.instances, &mut rng, &mut notes)?,
        Suite::Acl => acl(space)?,
        Suite::Akset => akset(space, options.instances, &mut rng)?,
        Suite::GnhOrder => gnh_order(space)?,
        Suite::Interval => interval(space, &mut notes)?,
    };
    Ok(SuiteReport { suite, p: space.p(), n: space.n(), checks, notes })
}

fn images(g: &Perm) -> Value {
    json!(g.images())
}

fn random_nonzero(space: &Space, rng: &mut impl Rng) -> u32 {
    rng.gen_range(1..space.size())
}

fn random_sym(degree: usize, rng: &mut impl Rng) -> Perm {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    images.shuffle(rng);
    Perm::from_images(images).expect("shuffles are bijections")
}

/// A uniformly random class-fixing permutation: independent label
/// permutations on every nonzero class.
fn random_class_fixing(ls: &LabelledSpace, rng: &mut impl Rng) -> Perm {
    let k = ls.gamma().order();
    ls.classes()
        .nonzero()
        .fold(Perm::identity(ls.space().size() as usize), |acc, c| acc.then(&ls.lift_on_class(c, &random_sym(k, rng))))
}

fn random_labelled(space: &Space, gamma: &GammaSubgroup, rng: &mut impl Rng) -> Result<LabelledSpace, VerifyError> {
    let base = LabelledSpace::new(space, gamma);
    let part = base.classes().clone();
    let reps: Vec<u32> =
        part.nonzero().map(|c| *part.classes()[c].choose(rng).expect("classes are nonempty")).collect();
    let labelling = labelling_from_reps(space, &part, gamma, &reps)?;
    Ok(LabelledSpace::with_labelling(space, gamma, part, labelling))
}

fn sigma_laws(space: &Space, instances: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, VerifyError> {
    let p = space.p();
    let gl = gl_group(space);
    let setups: Vec<(LabelledSpace, PermGroup, PermGroup)> = gamma_subgroups(p)
        .iter()
        .map(|g| {
            let ls = LabelledSpace::new(space, g);
            let cc = ls.class_compatible_group();
            let sym_f = ls.sym_f_group();
            (ls, cc, sym_f)
        })
        .collect();

    let mut examples = Check::new("examples");
    for (ls, _, _) in &setups {
        let d = ls.gamma().order();
        let v = random_nonzero(space, rng);
        let id = ls.sigma(&Perm::identity(space.size() as usize), v)?;
        examples.record(id.is_identity(), || json!({"law": "identity", "v": v}));
        let s = random_sym(d, rng);
        let c = ls.classes().class_of(v);
        let lift = ls.lift_on_class(c, &s);
        let on = ls.sigma(&lift, v)?;
        examples.record(on == s, || json!({"law": "lift", "v": v, "sigma": images(&s), "got": images(&on)}));
        for w in space.points().skip(1).filter(|&w| ls.classes().class_of(w) != c) {
            let off = ls.sigma(&lift, w)?;
            examples.record(off.is_identity(), || json!({"law": "lift elsewhere", "class_of": v, "w": w}));
        }
        if ls.gamma().is_full() && p == 3 {
            let scalar = Perm::from_images(space.points().map(|x| space.scale(2, x)).collect())?;
            let t = ls.sigma(&scalar, v)?;
            examples.record(t == Perm::from_cycles(2, &[&[0, 1]])?, || json!({"law": "scalar 2", "v": v}));
        }
    }

    let mut constancy = Check::new("class_constancy");
    let mut membership = Check::new("sym_f_membership");
    let mut circ = Check::new("sigma_circ");
    let mut autgaut = Check::new("autgaut");
    let mut swap = Check::new("labelsswap");
    for i in 0..instances {
        let (ls, cc, sym_f) = &setups[i % setups.len()];
        let gamma = ls.gamma().elements().to_vec();

        let g = cc.random_element(rng);
        let c = rng.gen_range(ls.classes().nonzero());
        let rep = ls.classes().classes()[c][0];
        let at_rep = ls.sigma(&g, rep)?;
        for &w in &ls.classes().classes()[c] {
            let s = ls.sigma(&g, w)?;
            constancy.record(s == at_rep, || json!({"gamma": gamma, "g": images(&g), "v": rep, "w": w}));
        }

        let probe = if i % 2 == 0 { sym_f.random_element(rng) } else { g.clone() };
        let by_sigma = ls.preserves_labels(&probe);
        membership.record(
            sym_f.contains(&probe) == by_sigma,
            || json!({"gamma": gamma, "g": images(&probe), "all_sigma_identity": by_sigma}),
        );

        let h = cc.random_element(rng);
        let v = random_nonzero(space, rng);
        let lhs = ls.sigma(&g.then(&h), v)?;
        let rhs = ls.sigma(&g, v)?.then(&ls.sigma(&h, g.image(v))?);
        circ.record(lhs == rhs, || {
            json!({"gamma": gamma, "g": images(&g), "h": images(&h), "v": v, "lhs": images(&lhs), "rhs": images(&rhs)})
        });

        let gamma_el = gl.random_element(rng);
        let x = random_class_fixing(ls, rng);
        let conj = gamma_el.then(&x).then(&gamma_el.inverse());
        let w = gamma_el.image(v);
        let f = ls.labelling();
        let mu = f.get(w)? * inv_mod(f.get(v)?, p) % p;
        let lhs = ls.sigma(&conj, v)?;
        let rhs = ls.mult(mu).then(&ls.sigma(&x, w)?).then(ls.mult(inv_mod(mu, p)));
        autgaut.record(lhs == rhs, || {
            json!({"gamma": gamma, "aut": images(&gamma_el), "g": images(&x), "v": v, "lhs": images(&lhs), "rhs": images(&rhs)})
        });

        let f1 = random_labelled(space, ls.gamma(), rng)?;
        let f2 = random_labelled(space, ls.gamma(), rng)?;
        let lambda = f2.labelling().get(v)? * inv_mod(f1.labelling().get(v)?, p) % p;
        let lhs = f2.sigma(&x, v)?;
        let rhs = f1.mult(inv_mod(lambda, p)).then(&f1.sigma(&x, v)?).then(f1.mult(lambda));
        swap.record(lhs == rhs, || {
            json!({
                "gamma": gamma,
                "g": images(&x),
                "v": v,
                "f1": f1.labelling().to_json(),
                "f2": f2.labelling().to_json(),
                "lhs": images(&lhs),
                "rhs": images(&rhs),
            })
        });
    }
    Ok(vec![examples, constancy, membership, circ, autgaut, swap])
}

fn geometry(
    space: &Space,
    instances: usize,
    rng: &mut ChaCha8Rng,
    notes: &mut Vec<String>,
) -> Result<Vec<Check>, VerifyError> {
    let samples = (instances / 10).max(1);
    let gl = gl_group(space);
    let agl = agl_group(space);
    let mut checks = Vec::new();

    if space.n() >= 3 {
        let ps = ProjectiveSpace::new(space);
        let mut accept = Check::new("ftpg_accepts_linear");
        for _ in 0..samples {
            let g = gl.random_element(rng);
            let q = ps.projective_action(&g)?;
            let rebuilt = ps.ftpg_reconstruct(&q)?;
            let ok = match &rebuilt {
                Some(m) => gl.contains(m) && ps.projective_action(m)? == q,
                None => false,
            };
            accept.record(ok, || json!({"linear": images(&g), "reconstructed": rebuilt.as_ref().map(images)}));
        }
        let mut reject = Check::new("ftpg_rejects_non_collineations");
        let degree = ps.points().len();
        let mut found = 0;
        while found < samples {
            let q = if found % 2 == 0 {
                ProjPerm(random_sym(degree, rng))
            } else {
                let a = rng.gen_range(0..degree as u32);
                let b = (a + rng.gen_range(1..degree as u32)) % degree as u32;
                let t = Perm::from_cycles(degree, &[&[a, b]])?;
                ProjPerm(ps.projective_action(&gl.random_element(rng))?.0.then(&t))
            };
            if ps.preserves_projective_lines(&q) {
                continue;
            }
            found += 1;
            let rebuilt = ps.ftpg_reconstruct(&q)?;
            reject.record(rebuilt.is_none(), || json!({"proj_perm": images(&q.0)}));
        }
        checks.push(accept);
        checks.push(reject);
    } else {
        notes.push("projective line preservation is vacuous for n < 3; FTPG checks skipped".into());
    }

    let mut decompose = Check::new("ftag_decomposes_affine");
    let check_affine = |g: &Perm, c: &mut Check| {
        let ok = match ftag_decompose(space, g) {
            Some((t, phi)) => {
                t == g.image(0)
                    && gl.contains(&phi)
                    && space.points().all(|x| space.add(phi.image(x), t) == g.image(x))
                    && preserves_affine_lines(space, g)
            }
            None => false,
        };
        c.record(ok, || json!({"g": images(g)}));
    };
    if agl.order() <= &num_bigint::BigUint::from(50_000u32) {
        agl.for_each_element(|g| check_affine(g, &mut decompose));
    } else {
        for _ in 0..instances {
            check_affine(&agl.random_element(rng), &mut decompose);
        }
    }
    let mut non_affine = Check::new("ftag_rejects_non_affine");
    let mut r_random = Check::new("relation_r_random");
    let mut found = 0;
    while found < samples {
        let g = random_sym(space.size() as usize, rng);
        if agl.contains(&g) {
            continue;
        }
        found += 1;
        non_affine.record(ftag_decompose(space, &g).is_none(), || json!({"g": images(&g)}));
        r_random.record(!preserves_relation_r(space, &g), || json!({"non_affine": images(&g)}));
        let a = agl.random_element(rng);
        r_random.record(preserves_relation_r(space, &a), || json!({"affine": images(&a)}));
    }
    checks.extend([decompose, non_affine, r_random]);

    if space.size() <= 9 {
        let mut brute = Check::new("relation_r_exhaustive");
        let aut = brute_aut_of_r(space)?;
        let equal = aut.equals(&agl)?;
        brute.record(equal, || json!({"aut_order": aut.order().to_string(), "agl_order": agl.order().to_string()}));
        checks.push(brute);
    }
    Ok(checks)
}

fn acl(space: &Space) -> Result<Vec<Check>, VerifyError> {
    let agl = agl_group(space);
    let mut check = Check::new("acl_is_affine_line");
    for v in space.points() {
        for w in (v + 1)..space.size() {
            let acl = match acl_pair(space, &agl, v, w) {
                Err(ClassifyError::DegenerateSpan) => continue,
                other => other?,
            };
            let line = space.affine_closure(&[v, w])?.members;
            check.record(
                acl == line && acl.len() == space.p() as usize,
                || json!({"v": v, "w": w, "acl": acl, "affine_closure": line}),
            );
        }
    }
    Ok(vec![check])
}

/// Groups the A_k suite runs over, with display names.
pub fn akset_groups(space: &Space) -> Result<Vec<(String, PermGroup)>, VerifyError> {
    let full = LabelledSpace::new(space, &GammaSubgroup::full(space.p()));
    let mut groups = vec![
        ("gl".to_string(), gl_group(space)),
        ("class_compatible".to_string(), full.class_compatible_group()),
        ("sym_f_gl".to_string(), full.sym_f_group().join(&gl_group(space))?),
        ("sym0".to_string(), sym_fixing_zero(space.size() as usize)),
        ("agl".to_string(), agl_group(space)),
    ];
    if space.size() <= CatalogOptions::default().max_points {
        let cat = catalog(space, &CatalogOptions::default())?;
        groups.extend(cat.entries.into_iter().map(|e| (format!("catalog#{}", e.id), e.group)));
    }
    Ok(groups)
}

fn random_subset(space: &Space, size: usize, rng: &mut impl Rng) -> Vec<u32> {
    let nonzero: Vec<u32> = (1..space.size()).collect();
    nonzero.choose_multiple(rng, size).copied().collect()
}

fn akset(space: &Space, instances: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Check>, VerifyError> {
    let k = (space.n() as usize).saturating_sub(1).max(1);
    let groups = akset_groups(space)?;
    let pk = (space.p() as usize).pow(k as u32);
    let mut trichotomy = Check::new("trichotomy");
    let mut anti = Check::new("antitone");
    let pairs = (instances / 10).max(1);
    for i in 0..pairs {
        let (name, group) = &groups[i % groups.len()];
        let big = random_subset(space, rng.gen_range(1..=3), rng);
        let small = big[..rng.gen_range(0..big.len())].to_vec();
        let mut results = Vec::new();
        for s in [&small, &big] {
            if s.is_empty() {
                results.push(None);
                continue;
            }
            match a_k_set(space, group, s, k, DEFAULT_AK_BUDGET) {
                Ok(r) => {
                    let ok = match r.shape {
                        AkShape::Empty => r.set.is_empty(),
                        AkShape::Full => r.set.len() == space.size() as usize,
                        AkShape::SubspaceImage => {
                            let g = r.witness.as_ref();
                            let sub = r.subspace.as_ref();
                            r.set.len() == pk
                                && g.zip(sub).is_some_and(|(g, sub)| {
                                    let mut img: Vec<u32> = r.set.iter().map(|&x| g.image(x)).collect();
                                    img.sort_unstable();
                                    let span = space.span(sub);
                                    img == *sub && span.dim() == k && span.members == *sub
                                })
                        }
                    };
                    trichotomy.record(ok, || json!({"group": name, "result": r.to_json()}));
                    results.push(Some(r));
                }
                Err(ClassifyError::InternalCheck(msg)) => {
                    trichotomy.record(false, || json!({"group": name, "S": s, "k": k, "error": msg}));
                    results.push(None);
                }
                Err(e) => return Err(e.into()),
            }
        }
        // the empty S imposes nothing, so every vector lies in A_k(∅) when k ≥ 1
        let outer: Option<Vec<u32>> = match &results[0] {
            Some(r) => Some(r.set.clone()),
            None if small.is_empty() => Some(space.points().collect()),
            None => None,
        };
        if let (Some(outer), Some(inner)) = (outer, &results[1]) {
            let ok = inner.set.iter().all(|x| outer.binary_search(x).is_ok());
            anti.record(ok, || json!({"group": name, "S": small, "T": big, "A_S": outer, "A_T": inner.set}));
        }
    }
    Ok(vec![trichotomy, anti])
}

fn gnh_order(space: &Space) -> Result<Vec<Check>, VerifyError> {
    let mut order = Check::new("order_formula");
    let mut members = Check::new("generators_in_g_nh");
    let mut roundtrip = Check::new("extraction_roundtrip");
    for gamma in gamma_subgroups(space.p()) {
        let ls = LabelledSpace::new(space, &gamma);
        for (n, h) in normal_pairs(gamma.order()) {
            let describe = || json!({"gamma": gamma.elements(), "N": n.values(&gamma), "H": h.values(&gamma)});
            let group = match build_g_nh(&ls, &n, &h) {
                Ok(g) => g,
                Err(ClassifyError::InternalCheck(msg)) => {
                    order.record(false, || json!({"pair": describe(), "error": msg}));
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            let expected = g_nh_order(&n, &h, ls.classes().num_nonzero());
            order
                .record(*group.order() == expected, || json!({"pair": describe(), "order": group.order().to_string()}));
            for g in group.gens() {
                members.record(in_g_nh(&ls, g, &n, &h), || json!({"pair": describe(), "g": images(g)}));
            }
            let gstar = g_star(&ls, &group)?;
            let same = |a: &SigmaGroup, b: &SigmaGroup| a == b;
            let (h2, n2) = (extract_h(&ls, &gstar)?, extract_n(&ls, &gstar)?);
            roundtrip.record(
                *gstar.order() == expected && same(&h2, &h) && same(&n2, &n),
                || json!({"pair": describe(), "extracted_N": n2.values(&gamma), "extracted_H": h2.values(&gamma)}),
            );
        }
    }
    Ok(vec![order, members, roundtrip])
}

fn interval(space: &Space, notes: &mut Vec<String>) -> Result<Vec<Check>, VerifyError> {
    if space.size() > DEFAULT_MAX_POINTS {
        return Err(VerifyError::Unsupported {
            suite: "interval",
            p: space.p(),
            n: space.n(),
            reason: format!("enumeration is limited to {DEFAULT_MAX_POINTS} points"),
        });
    }
    let report = enumerate_overgroups(space, DEFAULT_MAX_POINTS)?;
    let d = space.size() as usize;
    let mut landmarks = Check::new("landmarks_present");
    for (name, g) in
        [("GL", gl_group(space)), ("AGL", agl_group(space)), ("Sym_0", sym_fixing_zero(d)), ("Sym", sym_group(d))]
    {
        let mut hits = 0;
        for x in &report.groups {
            if x.group.equals(&g)? {
                hits += 1;
            }
        }
        landmarks.record(hits == 1, || json!({"group": name, "occurrences": hits}));
    }
    let mut distinct = Check::new("pairwise_distinct");
    for (i, a) in report.groups.iter().enumerate() {
        for b in &report.groups[i + 1..] {
            let same = a.group.contains_group(&b.group)? && b.group.contains_group(&a.group)?;
            distinct.record(!same, || json!({"first": a.id, "second": b.id}));
        }
    }
    let cat = catalog(space, &CatalogOptions::default())?;
    let check = cross_check(&report, &cat)?;
    let mut covered = Check::new("catalog_covered");
    for entry in &cat.entries {
        covered.record(!check.missing.contains(&entry.id), || json!({"catalog_id": entry.id}));
    }
    notes.push(format!(
        "{} groups enumerated, {} unmatched by the classification: {:?}",
        report.groups.len(),
        check.unmatched.len(),
        check.unmatched
    ));
    Ok(vec![landmarks, distinct, covered])
}
