use rayon::prelude::*;
use serde_json::{json, Value};

use super::{build_g_nh, normal_pairs, Case, ClassificationRecord, Classifier, ClassifyError, SigmaGroup};
use crate::field::Space;
use crate::gamma::{gamma_subgroups, GammaSubgroup, LabelledSpace};
use crate::perm::{io, Fingerprint, PermGroup};

/// How a catalog group was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Route {
    /// Sym(V).
    Sym,
    /// AGL(V).
    Agl,
    /// G(N, H) joined with GL.
    Aut,
    /// G(N, H) joined with Sym^f and GL.
    Symf,
}

impl Route {
    pub fn as_str(self) -> &'static str {
        match self {
            Route::Sym => "SYM",
            Route::Agl => "AGL",
            Route::Aut => "AUT",
            Route::Symf => "SYMF",
        }
    }

    pub fn case(self) -> Case {
        match self {
            Route::Sym => Case::Sym,
            Route::Agl => Case::Agl,
            Route::Aut => Case::Fix0Aut,
            Route::Symf => Case::Fix0Symf,
        }
    }
}

/// The parameters of one construction, and whether classifying the result
/// gives them back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Construction {
    pub route: Route,
    pub gamma: Option<GammaSubgroup>,
    pub n: Option<SigmaGroup>,
    pub h: Option<SigmaGroup>,
    pub faithful: bool,
}

impl Construction {
    fn matches(&self, record: &ClassificationRecord) -> bool {
        record.round_trip_ok
            && record.case == self.route.case()
            && match self.route {
                Route::Sym | Route::Agl => true,
                Route::Aut | Route::Symf => {
                    record.gamma == self.gamma && record.n_group == self.n && record.h_group == self.h
                }
            }
    }

    pub fn to_json(&self) -> Value {
        let sigma = |s: &Option<SigmaGroup>| match (s, &self.gamma) {
            (Some(s), Some(g)) => json!(s.values(g)),
            _ => Value::Null,
        };
        json!({
            "route": self.route.as_str(),
            "gamma": self.gamma.as_ref().map(|g| g.elements().to_vec()),
            "N": sigma(&self.n),
            "H": sigma(&self.h),
            "faithful": self.faithful,
        })
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: usize,
    pub group: PermGroup,
    pub record: ClassificationRecord,
    /// Every construction that produced this group, in plan order.
    pub constructions: Vec<Construction>,
}

impl CatalogEntry {
    /// Whether some construction of this group is reproduced by classification.
    pub fn is_faithful(&self) -> bool {
        self.constructions.iter().any(|c| c.faithful)
    }
}

#[derive(Debug, Clone)]
pub struct Catalog {
    pub p: u32,
    pub n: u32,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    /// Constructions whose parameters are not reproduced, with the id of the
    /// entry whose group they produced.
    pub fn collapsed(&self) -> Vec<(&Construction, usize)> {
        self.entries
            .iter()
            .flat_map(|e| e.constructions.iter().filter(|c| !c.faithful).map(move |c| (c, e.id)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "id": e.id,
                    "record": e.record.to_json(),
                    "generators": e.group.gens().iter().map(io::image_line).collect::<Vec<_>>(),
                    "constructions": e.constructions.iter().map(Construction::to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        let collapsed: Vec<Value> = self
            .collapsed()
            .into_iter()
            .map(|(c, id)| json!({"construction": c.to_json(), "absorbed_by": id}))
            .collect();
        json!({"p": self.p, "n": self.n, "entries": entries, "collapsed": collapsed})
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CatalogOptions {
    /// Largest p^n accepted.
    pub max_points: u32,
    /// Largest |Γ| whose Sym(Γ) subgroup lattice is enumerated.
    pub max_gamma: usize,
}

impl Default for CatalogOptions {
    fn default() -> Self {
        CatalogOptions { max_points: 27, max_gamma: 4 }
    }
}

struct Planned {
    route: Route,
    gamma: Option<GammaSubgroup>,
    n: Option<SigmaGroup>,
    h: Option<SigmaGroup>,
}

fn plan(space: &Space) -> Vec<Planned> {
    let mut out = vec![
        Planned { route: Route::Sym, gamma: None, n: None, h: None },
        Planned { route: Route::Agl, gamma: None, n: None, h: None },
    ];
    for gamma in gamma_subgroups(space.p()) {
        for (n, h) in normal_pairs(gamma.order()) {
            for route in [Route::Aut, Route::Symf] {
                out.push(Planned { route, gamma: Some(gamma.clone()), n: Some(n.clone()), h: Some(h.clone()) });
            }
        }
    }
    out
}

fn build(classifier: &Classifier, planned: &Planned) -> Result<PermGroup, ClassifyError> {
    match planned.route {
        Route::Sym => Ok(classifier.sym().clone()),
        Route::Agl => Ok(classifier.agl().clone()),
        Route::Aut | Route::Symf => {
            let gamma = planned.gamma.as_ref().expect("planned with gamma");
            let ls = LabelledSpace::new(classifier.space(), gamma);
            let gnh = build_g_nh(&ls, planned.n.as_ref().expect("N"), planned.h.as_ref().expect("H"))?;
            let mut group = gnh.join(classifier.gl())?;
            if planned.route == Route::Symf {
                group = group.join(&ls.sym_f_group())?;
            }
            Ok(group)
        }
    }
}

/// Sym(V), AGL(V), and G(N, H)·GL and G(N, H)·Sym^f·GL for every Γ and
/// every N ⊴ H ≤ Sym(Γ), with equal groups merged and each one classified.
///
/// Entries are ordered by group order, then by first construction.
pub fn catalog(space: &Space, options: &CatalogOptions) -> Result<Catalog, ClassifyError> {
    if space.size() > options.max_points {
        return Err(ClassifyError::Bounds(format!(
            "catalog supports at most {} points, got {}",
            options.max_points,
            space.size()
        )));
    }
    if space.p() as usize - 1 > options.max_gamma {
        return Err(ClassifyError::Bounds(format!(
            "subgroups of Sym(Γ) are enumerated for |Γ| <= {}, but p - 1 = {}",
            options.max_gamma,
            space.p() - 1
        )));
    }
    let classifier = Classifier::new(space);
    let planned = plan(space);
    let groups: Vec<PermGroup> = planned.par_iter().map(|pl| build(&classifier, pl)).collect::<Result<_, _>>()?;

    let mut distinct: Vec<(PermGroup, Fingerprint, Vec<usize>)> = Vec::new();
    for (i, g) in groups.into_iter().enumerate() {
        let fp = g.fingerprint();
        let mut merged = false;
        for (h, hfp, members) in distinct.iter_mut() {
            if *hfp == fp && h.equals(&g)? {
                members.push(i);
                merged = true;
                break;
            }
        }
        if !merged {
            distinct.push((g, fp, vec![i]));
        }
    }
    distinct.sort_by(|a, b| a.0.order().cmp(b.0.order()).then(a.2[0].cmp(&b.2[0])));

    let records: Vec<ClassificationRecord> =
        distinct.par_iter().map(|(g, _, _)| classifier.classify(g)).collect::<Result<_, _>>()?;
    let entries = distinct
        .into_iter()
        .zip(records)
        .enumerate()
        .map(|(id, ((group, _, members), record))| {
            let constructions = members
                .iter()
                .map(|&i| {
                    let pl = &planned[i];
                    let mut c = Construction {
                        route: pl.route,
                        gamma: pl.gamma.clone(),
                        n: pl.n.clone(),
                        h: pl.h.clone(),
                        faithful: false,
                    };
                    c.faithful = c.matches(&record);
                    c
                })
                .collect();
            CatalogEntry { id, group, record, constructions }
        })
        .collect();
    Ok(Catalog { p: space.p(), n: space.n(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::sym_fixing_zero;
    use num_bigint::BigUint;

    fn orders(cat: &Catalog) -> Vec<BigUint> {
        cat.entries.iter().map(|e| e.group.order().clone()).collect()
    }

    #[test]
    fn plane_over_f3() {
        let v = Space::new(3, 2).unwrap();
        let cat = catalog(&v, &CatalogOptions::default()).unwrap();
        let os = orders(&cat);
        for o in [48u32, 432, 40_320, 362_880] {
            assert!(os.contains(&BigUint::from(o)), "missing order {o}");
        }
        let gl = crate::perm::gl_group(&v);
        for e in &cat.entries {
            assert!(e.group.contains_group(&gl).unwrap());
        }
        for (i, a) in cat.entries.iter().enumerate() {
            for b in &cat.entries[i + 1..] {
                assert!(!a.group.equals(&b.group).unwrap());
            }
        }
        assert!(cat.entries.iter().any(|e| e.group.equals(&sym_fixing_zero(9)).unwrap()));
        let between = cat.entries.iter().any(|e| {
            e.record.fixes_zero
                && *e.group.order() > BigUint::from(48u32)
                && *e.group.order() < BigUint::from(40_320u32)
        });
        assert!(between);
        for e in &cat.entries {
            if e.is_faithful() {
                assert!(e.record.round_trip_ok);
            }
        }
        assert!(!cat.collapsed().is_empty());
    }

    #[test]
    fn bounds() {
        let big = Space::new(3, 4).unwrap();
        assert!(matches!(catalog(&big, &CatalogOptions::default()), Err(ClassifyError::Bounds(_))));
        let p7 = Space::new(7, 1).unwrap();
        assert!(matches!(catalog(&p7, &CatalogOptions::default()), Err(ClassifyError::Bounds(_))));
    }
}
