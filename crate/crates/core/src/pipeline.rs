//! Full verification of a candidate minimal polynomial: squarefree, split
//! profile, irreducibility, exact height and the minimal-height criteria.

use serde::Serialize;

use crate::error::Result;
use crate::factor::{newton_segment_certificate, recombine_irreducible, Certificate};
use crate::heights::{check_min_height_criteria, height_local, height_minpoly, CriteriaReport, HeightValue};
use crate::localfield::{profile_of_branches, root_branches, SplitProfile};
use crate::poly::{is_squarefree, normalize_minpoly, BiPoly};

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub poly: String,
    pub q: u32,
    pub deg_x: usize,
    pub deg_t: usize,
    pub squarefree: bool,
    /// A root in F_q, printed.
    pub rational_root: Option<String>,
    pub profile: Option<SplitProfile>,
    /// None when f neither splits nor carries a cheap certificate.
    pub irreducible: Option<bool>,
    pub certificate: Option<Certificate>,
    /// Irreducible factors found by recombination, when reducible.
    pub factors: Vec<String>,
    pub height: HeightValue,
    pub height_local: Option<HeightValue>,
    pub criteria: CriteriaReport,
    /// Certified: squarefree, split, irreducible, height 1/(q+1) and every
    /// criterion holds.
    pub minimal_height: bool,
}

pub fn verify_candidate(f: &BiPoly) -> Result<CandidateReport> {
    let f = normalize_minpoly(f)?;
    let field = f.field();
    let q = field.q();
    let height = height_minpoly(&f)?;
    let squarefree = is_squarefree(&f);
    let rational_root = f.has_rational_root();
    let criteria = check_min_height_criteria(&f, None);

    let mut profile = None;
    let mut irreducible = None;
    let mut certificate = None;
    let mut factors = Vec::new();
    if f.deg_x() == Some(1) {
        irreducible = Some(true);
        certificate = Some(Certificate::Linear);
    } else if rational_root.is_some() {
        irreducible = Some(false);
    } else if let Some(place) = newton_segment_certificate(&f) {
        irreducible = Some(true);
        certificate = Some(Certificate::NewtonSegment(format!("{place:?}")));
    }
    if squarefree {
        let branches = root_branches(&f)?;
        let p = profile_of_branches(&f, &branches);
        if p.splits && irreducible.is_none() {
            let fac = recombine_irreducible(&f)?;
            irreducible = Some(fac.irreducible);
            if !fac.irreducible {
                factors = fac.factors.iter().map(|g| g.to_string()).collect();
            }
            certificate = Some(fac.certificate);
        }
        profile = Some(p);
    } else if irreducible.is_none() {
        // a repeated factor over F_q(T) means f is reducible or inseparable
        irreducible = Some(false);
    }

    let height_local = if squarefree { height_local(&f).ok() } else { None };
    let minimal_height = squarefree
        && profile.is_some_and(|p| p.splits)
        && irreducible == Some(true)
        && height == HeightValue::new(1, q as u64 + 1)?
        && criteria.pass;
    Ok(CandidateReport {
        poly: f.to_string(),
        q,
        deg_x: f.deg_x().unwrap(),
        deg_t: f.deg_t().unwrap(),
        squarefree,
        rational_root: rational_root.map(|u| field.format_elem(u)),
        profile,
        irreducible,
        certificate,
        factors,
        height,
        height_local,
        criteria,
        minimal_height,
    })
}
