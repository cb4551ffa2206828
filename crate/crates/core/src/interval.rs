//! Exhaustive enumeration of the groups between GL(n, p) and Sym(p^n) for
//! tiny spaces, and comparison with the catalog.
//!
//! Starting from GL, every group K found so far is joined with one
//! representative of each K-conjugacy class of Sym(p^n) outside K. Since
//! `⟨K, g⟩ = ⟨K, k⁻¹gk⟩` for `k ∈ K`, one representative per class suffices,
//! and every overgroup is reached by adjoining elements one at a time.

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::classify::{Catalog, ClassificationRecord, Classifier, ClassifyError};
use crate::field::Space;
use crate::perm::{gl_group, io, Fingerprint, Perm, PermError, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("enumeration supports at most {max} points, got {got}")]
    DegreeTooLarge { max: u32, got: u32 },
    #[error("catalog is for a different space")]
    SpaceMismatch,
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
}

/// Default largest p^n for [`enumerate_overgroups`].
pub const DEFAULT_MAX_POINTS: u32 = 9;

#[derive(Debug, Clone)]
pub struct IntervalGroup {
    pub id: usize,
    pub group: PermGroup,
    pub record: ClassificationRecord,
}

#[derive(Debug, Clone)]
pub struct IntervalReport {
    pub p: u32,
    pub n: u32,
    /// Distinct groups, ordered by order and then by discovery.
    pub groups: Vec<IntervalGroup>,
    /// Number of joins `⟨K, g⟩` computed.
    pub joins: usize,
}

/// Pairing of catalog entries with enumerated groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    /// `(catalog id, enumerated id)`.
    pub matched: Vec<(usize, usize)>,
    /// Enumerated groups that are unclassified or absent from the catalog.
    pub unmatched: Vec<usize>,
    /// Catalog entries with no equal enumerated group.
    pub missing: Vec<usize>,
}

impl IntervalReport {
    pub fn to_json(&self, check: Option<&CrossCheck>) -> Value {
        let catalog_id = |id: usize| check.and_then(|c| c.matched.iter().find(|m| m.1 == id).map(|m| m.0));
        let groups: Vec<Value> = self
            .groups
            .iter()
            .map(|g| {
                json!({
                    "id": g.id,
                    "order": g.group.order().to_string(),
                    "generators": g.group.gens().iter().map(io::image_line).collect::<Vec<_>>(),
                    "record": g.record.to_json(),
                    "catalog_id": catalog_id(g.id),
                })
            })
            .collect();
        let mut out = json!({"p": self.p, "n": self.n, "groups": groups, "joins": self.joins});
        if let Some(c) = check {
            out["unmatched"] = json!(c.unmatched);
            out["missing_from_enumeration"] = json!(c.missing);
        }
        out
    }
}

/// Representatives of the K-conjugacy classes of Sym(degree) outside K,
/// in order of first occurrence by rank.
fn class_representatives(k: &PermGroup) -> Vec<Perm> {
    let d = k.degree();
    let total: u64 = (1..=d as u64).product();
    let mut seen = vec![0u64; total.div_ceil(64) as usize];
    let mark = |seen: &mut [u64], r: u64| -> bool {
        let (w, b) = ((r / 64) as usize, r % 64);
        let fresh = seen[w] & (1 << b) == 0;
        seen[w] |= 1 << b;
        fresh
    };
    let conj: Vec<(Perm, Perm)> = k.gens().iter().map(|x| (x.inverse(), x.clone())).collect();
    let mut reps = Vec::new();
    for r in 0..total {
        if !mark(&mut seen, r) {
            continue;
        }
        let g = Perm::unrank(d, r);
        let mut queue = vec![g.clone()];
        while let Some(x) = queue.pop() {
            for (inv, y) in &conj {
                let c = inv.then(&x).then(y);
                if mark(&mut seen, c.rank()) {
                    queue.push(c);
                }
            }
        }
        if !k.contains(&g) {
            reps.push(g);
        }
    }
    reps
}

/// All groups between GL(n, p) and Sym(p^n), each classified.
pub fn enumerate_overgroups(space: &Space, max_points: u32) -> Result<IntervalReport, IntervalError> {
    if space.size() > max_points {
        return Err(IntervalError::DegreeTooLarge { max: max_points, got: space.size() });
    }
    let gl = gl_group(space);
    let mut found: Vec<(PermGroup, Fingerprint)> = vec![(gl.clone(), gl.fingerprint())];
    let mut joins = 0;
    let mut next = 0;
    while next < found.len() {
        let k = found[next].0.clone();
        next += 1;
        let reps = class_representatives(&k);
        joins += reps.len();
        let candidates: Vec<(PermGroup, Fingerprint)> = reps
            .par_iter()
            .map(|g| {
                let j = k.join_with(std::slice::from_ref(g))?;
                let fp = j.fingerprint();
                Ok((j, fp))
            })
            .collect::<Result<_, PermError>>()?;
        for (j, fp) in candidates {
            let mut known = false;
            for (h, hfp) in &found {
                if *hfp == fp && h.equals(&j)? {
                    known = true;
                    break;
                }
            }
            if !known {
                found.push((j, fp));
            }
        }
    }
    let mut ordered: Vec<(usize, PermGroup)> = found.into_iter().map(|(g, _)| g).enumerate().collect();
    ordered.sort_by(|a, b| a.1.order().cmp(b.1.order()).then(a.0.cmp(&b.0)));
    let classifier = Classifier::new(space);
    let records: Vec<ClassificationRecord> =
        ordered.par_iter().map(|(_, g)| classifier.classify(g)).collect::<Result<_, _>>()?;
    let groups = ordered
        .into_iter()
        .zip(records)
        .enumerate()
        .map(|(id, ((_, group), record))| IntervalGroup { id, group, record })
        .collect();
    Ok(IntervalReport { p: space.p(), n: space.n(), groups, joins })
}

/// Matches each catalog entry with the enumerated group equal to it.
pub fn cross_check(report: &IntervalReport, catalog: &Catalog) -> Result<CrossCheck, IntervalError> {
    if report.p != catalog.p || report.n != catalog.n {
        return Err(IntervalError::SpaceMismatch);
    }
    let mut matched = Vec::new();
    let mut missing = Vec::new();
    for entry in &catalog.entries {
        let mut hit = None;
        for g in &report.groups {
            if g.group.order() == entry.group.order() && g.group.equals(&entry.group)? {
                hit = Some(g.id);
                break;
            }
        }
        match hit {
            Some(id) => matched.push((entry.id, id)),
            None => missing.push(entry.id),
        }
    }
    let unmatched = report
        .groups
        .iter()
        .filter(|g| g.record.case == crate::classify::Case::Unclassified || !matched.iter().any(|m| m.1 == g.id))
        .map(|g| g.id)
        .collect();
    Ok(CrossCheck { matched, unmatched, missing })
}
