//! Classification of overgroups of GL(n, p) in Sym(F_p^n).
//!
//! A group moving 0 is compared with Sym(V) and AGL(V). A group fixing 0 is
//! reduced to Γ, its class kernel G*, and the pair N ⊴ H ≤ Sym(Γ) read off
//! G*; the group is then rebuilt from (N, H) as either G(N, H)·GL or
//! G(N, H)·Sym^f·GL and compared with the input.

mod aks;
mod catalog;
mod gnh;
mod sigma_group;

use num_bigint::BigUint;
use serde_json::{json, Value};
use thiserror::Error;

pub use aks::{a_k_set, acl_pair, AkResult, AkShape, DEFAULT_AK_BUDGET};
pub use catalog::{catalog, Catalog, CatalogEntry, CatalogOptions, Construction, Route};
pub use gnh::{build_g_nh, extract_h, extract_n, g_nh_order, g_star, in_g_nh};
pub use sigma_group::{normal_pairs, subgroups, SigmaGroup};

use crate::field::{FieldError, Space};
use crate::gamma::{compute_gamma, GammaError, GammaSubgroup, LabelledSpace};
use crate::geometry::{agl_group, GeometryError, ProjectiveSpace};
use crate::perm::{gl_group, sym_group, PermError, PermGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("the group does not contain GL(n, p)")]
    MissingAutV,
    #[error("N is not a normal subgroup of H")]
    NotNormal,
    #[error("span of the pair is the whole space")]
    DegenerateSpan,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("orbit budget of {0} tuples exhausted")]
    BudgetExceeded(usize),
    #[error("outside supported bounds: {0}")]
    Bounds(String),
    #[error("internal check failed: {0}")]
    InternalCheck(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Gamma(#[from] GammaError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    Sym,
    Agl,
    Fix0Aut,
    Fix0Symf,
    Unclassified,
}

impl Case {
    pub fn as_str(self) -> &'static str {
        match self {
            Case::Sym => "SYM",
            Case::Agl => "AGL",
            Case::Fix0Aut => "FIX0_AUT",
            Case::Fix0Symf => "FIX0_SYMF",
            Case::Unclassified => "UNCLASSIFIED",
        }
    }
}

/// Everything the classifier reports about one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub p: u32,
    pub n: u32,
    pub order: BigUint,
    pub fixes_zero: bool,
    pub gamma: Option<GammaSubgroup>,
    pub preserves_lines: Option<bool>,
    pub case: Case,
    pub n_group: Option<SigmaGroup>,
    pub h_group: Option<SigmaGroup>,
    pub round_trip_ok: bool,
    pub notes: Vec<String>,
}

impl ClassificationRecord {
    pub fn to_json(&self) -> Value {
        let sigma = |s: &Option<SigmaGroup>| match (s, &self.gamma) {
            (Some(s), Some(g)) => json!(s.values(g)),
            _ => Value::Null,
        };
        json!({
            "p": self.p,
            "n": self.n,
            "order": self.order.to_string(),
            "fixes_zero": self.fixes_zero,
            "gamma": self.gamma.as_ref().map(|g| g.elements().to_vec()),
            "preserves_lines": self.preserves_lines,
            "case": self.case.as_str(),
            "N": sigma(&self.n_group),
            "H": sigma(&self.h_group),
            "round_trip_ok": self.round_trip_ok,
            "notes": self.notes.join("; "),
        })
    }
}

/// Reference groups of one space, built once and reused for every classification.
#[derive(Debug, Clone)]
pub struct Classifier {
    space: Space,
    gl: PermGroup,
    agl: PermGroup,
    sym: PermGroup,
    projective: ProjectiveSpace,
}

impl Classifier {
    pub fn new(space: &Space) -> Self {
        Classifier {
            space: space.clone(),
            gl: gl_group(space),
            agl: agl_group(space),
            sym: sym_group(space.size() as usize),
            projective: ProjectiveSpace::new(space),
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn gl(&self) -> &PermGroup {
        &self.gl
    }

    pub fn agl(&self) -> &PermGroup {
        &self.agl
    }

    pub fn sym(&self) -> &PermGroup {
        &self.sym
    }

    /// Whether every generator induces a line-preserving map of projective points.
    pub fn preserves_lines(&self, group: &PermGroup) -> bool {
        group
            .gens()
            .iter()
            .all(|g| self.projective.projective_action(g).is_ok_and(|q| self.projective.preserves_projective_lines(&q)))
    }

    pub fn classify(&self, group: &PermGroup) -> Result<ClassificationRecord, ClassifyError> {
        if group.degree() != self.space.size() as usize {
            return Err(ClassifyError::InvalidInput(format!(
                "group has degree {} but the space has {} points",
                group.degree(),
                self.space.size()
            )));
        }
        if !group.contains_group(&self.gl)? {
            return Err(ClassifyError::MissingAutV);
        }
        let mut record = ClassificationRecord {
            p: self.space.p(),
            n: self.space.n(),
            order: group.order().clone(),
            fixes_zero: group.fixes_point(0),
            gamma: None,
            preserves_lines: None,
            case: Case::Unclassified,
            n_group: None,
            h_group: None,
            round_trip_ok: false,
            notes: Vec::new(),
        };
        if !record.fixes_zero {
            self.classify_moving(group, &mut record)?;
        } else {
            self.classify_fixing(group, &mut record)?;
        }
        Ok(record)
    }

    fn classify_moving(&self, group: &PermGroup, record: &mut ClassificationRecord) -> Result<(), ClassifyError> {
        let stab = group.pointwise_stabilizer(&[0])?;
        let gamma = compute_gamma(&self.space, &stab)?;
        if gamma.is_full() {
            record.preserves_lines = Some(self.preserves_lines(&stab));
        }
        record.gamma = Some(gamma);
        if group.equals(&self.sym)? {
            record.case = Case::Sym;
            record.round_trip_ok = true;
        } else if group.equals(&self.agl)? {
            record.case = Case::Agl;
            record.round_trip_ok = true;
        } else {
            record.notes.push("moves 0 but equals neither Sym(V) nor AGL(V)".into());
        }
        Ok(())
    }

    fn classify_fixing(&self, group: &PermGroup, record: &mut ClassificationRecord) -> Result<(), ClassifyError> {
        let gamma = compute_gamma(&self.space, group)?;
        let ls = LabelledSpace::new(&self.space, &gamma);
        let lines = gamma.is_full().then(|| self.preserves_lines(group));
        record.preserves_lines = lines;
        let gstar = g_star(&ls, group)?;
        let h = extract_h(&ls, &gstar)?;
        let n = extract_n(&ls, &gstar)?;
        record.gamma = Some(gamma);
        record.n_group = Some(n.clone());
        record.h_group = Some(h.clone());
        if !n.is_normal_in(&h) {
            record.notes.push("extracted N is not normal in H".into());
            return Ok(());
        }
        let gnh = build_g_nh(&ls, &n, &h)?;
        let aut_route = gnh.join(&self.gl)?;
        let expect_aut = lines == Some(true);
        let aut_ok = aut_route.equals(group)?;
        if expect_aut && aut_ok {
            record.case = Case::Fix0Aut;
            record.round_trip_ok = true;
            return Ok(());
        }
        let symf_route = aut_route.join(&ls.sym_f_group())?;
        let symf_ok = symf_route.equals(group)?;
        if !expect_aut && symf_ok {
            record.case = Case::Fix0Symf;
            record.round_trip_ok = true;
            return Ok(());
        }
        let expected = if expect_aut { "G(N,H)·GL" } else { "G(N,H)·Sym^f·GL" };
        record.notes.push(format!("G differs from the predicted {expected}"));
        if gstar.order() != gnh.order() {
            record.notes.push(format!("G* has order {} but G(N,H) has order {}", gstar.order(), gnh.order()));
        }
        if expect_aut && symf_ok {
            record.notes.push("G equals G(N,H)·Sym^f·GL although every generator preserves projective lines".into());
        }
        if !expect_aut && aut_ok {
            record.notes.push("G equals G(N,H)·GL although the line test fails".into());
        }
        Ok(())
    }
}

/// Classifies `group` with freshly built reference groups.
pub fn classify(space: &Space, group: &PermGroup) -> Result<ClassificationRecord, ClassifyError> {
    Classifier::new(space).classify(group)
}
