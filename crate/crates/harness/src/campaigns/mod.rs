//! Verification campaigns.
//!
//! Every campaign walks a grid of cells in a fixed order, farms the work of
//! each cell out in position-ordered chunks and merges the results in the
//! same order, so reports do not depend on the worker count.

mod example;
mod sweeps;
mod theorems;

use std::collections::BTreeMap;
use std::time::Instant;

use carlitz_core::bounds::{collision_count, curve_affine_count, main_bound, monomial_bound, CollisionReport};
use carlitz_core::rank::RankTable;
use carlitz_core::{CarlitzForm, Elem, Field, FormClass, FormSpace, PermMap, Poly};

pub use example::example_f9;
pub use sweeps::{curve_sweep, mu_sweep};
pub use theorems::{verify_corollary, verify_main, verify_monomial};

use crate::config::{CampaignConfig, CampaignKind, FieldSpec};
use crate::error::{HarnessError, Result};
use crate::exec::Exec;
use crate::oracle;
use crate::report::{CampaignReport, Witness};

/// Validates `cfg`, runs it, and writes the report when an output path is set.
pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let exec = Exec::new(cfg.workers)?;
    let start = Instant::now();
    let mut report = match cfg.kind {
        CampaignKind::MainTheorem => verify_main(cfg, &exec)?,
        CampaignKind::MonomialTheorem => verify_monomial(cfg, &exec)?,
        CampaignKind::CorollaryComplete => verify_corollary(cfg, &exec)?,
        CampaignKind::ExampleF9 => example_f9(cfg)?,
        CampaignKind::MuSweep => mu_sweep(cfg, &exec)?,
        CampaignKind::CurveSweep => curve_sweep(cfg, &exec)?,
    };
    report.wall_time = start.elapsed();
    if let Some(path) = &cfg.out {
        report.write_to(path, cfg.format)?;
    }
    Ok(report)
}

/// A permutation of known rank with all of its shortest representations.
#[derive(Clone, Debug)]
pub struct RankedPerm {
    pub map: PermMap,
    pub forms: Vec<CarlitzForm>,
}

/// A field with its permutations grouped by exact rank.
pub struct FieldCtx {
    pub spec: FieldSpec,
    pub field: Field,
    pub q: u64,
    /// `levels[n]`: rank-`n` permutations, in order of their first
    /// representation in the lexicographic form order.
    pub levels: Vec<Vec<RankedPerm>>,
    pub forms_scanned: u64,
}

impl FieldCtx {
    pub fn build(spec: FieldSpec, n_max: usize, exec: &Exec) -> Result<Self> {
        let field = spec.build()?;
        let table = RankTable::build(&field, n_max)?;
        let mut levels = Vec::with_capacity(n_max + 1);
        let mut forms_scanned = 0;
        for n in 0..=n_max {
            let space = FormSpace::new(&field, n);
            forms_scanned += space.len();
            let parts = space.slices(64);
            let expanded: Vec<Vec<(PermMap, CarlitzForm)>> = exec.map(&parts, |range| {
                space
                    .iter_range(range.clone())
                    .filter_map(|form| {
                        let map = form.expand(&field);
                        (table.rank_of(&map) == Some(n)).then_some((map, form))
                    })
                    .collect()
            });
            let mut index: BTreeMap<PermMap, usize> = BTreeMap::new();
            let mut level: Vec<RankedPerm> = Vec::new();
            for (map, form) in expanded.into_iter().flatten() {
                match index.get(&map) {
                    Some(&i) => level[i].forms.push(form),
                    None => {
                        index.insert(map.clone(), level.len());
                        level.push(RankedPerm { map, forms: vec![form] });
                    }
                }
            }
            levels.push(level);
        }
        let q = field.order() as u64;
        Ok(FieldCtx { spec, field, q, levels, forms_scanned })
    }

    /// Rank-`n` permutations with their representations of the given kind,
    /// dropping permutations that have none.
    pub fn filtered(&self, n: usize, keep: impl Fn(FormClass) -> bool) -> Vec<RankedPerm> {
        self.levels[n]
            .iter()
            .filter_map(|rp| {
                let forms: Vec<CarlitzForm> =
                    rp.forms.iter().filter(|f| keep(f.classify(&self.field))).cloned().collect();
                (!forms.is_empty()).then(|| RankedPerm { map: rp.map.clone(), forms })
            })
            .collect()
    }
}

/// `g` of exact degree `k` with index `idx < (q-1) q^k`: the low digits give
/// `g_0, ..., g_{k-1}` and the quotient the leading coefficient minus one.
pub fn g_from_index(q: u64, k: u64, idx: u64) -> Poly {
    let low = q.pow(k as u32);
    let mut rest = idx % low;
    let mut coeffs = Vec::with_capacity(k as usize + 1);
    for _ in 0..k {
        coeffs.push(Elem((rest % q) as u32));
        rest /= q;
    }
    coeffs.push(Elem((1 + idx / low) as u32));
    Poly::new(coeffs)
}

pub fn g_count(q: u64, k: u64) -> u64 {
    (q - 1) * q.pow(k as u32)
}

fn is_monomial(g: &Poly) -> bool {
    g.coeffs().iter().rev().skip(1).all(|c| c.is_zero())
}

/// The full record of a permutation pair `(f, f + g)` with `f` given by an
/// `L1` form of rank `n`. Replaying a witness calls this again.
pub fn hit_witness(
    spec: FieldSpec,
    field: &Field,
    form: &CarlitzForm,
    g: &Poly,
    n: u64,
    reason: &str,
) -> Result<(Witness, CollisionReport)> {
    let q = field.order() as u64;
    let coll = collision_count(field, form, g)?;
    let k = coll.k;
    let class = form.classify(field);
    let mut w = Witness::new(reason, spec.p, spec.r, q);
    w.form = Some(form.clone());
    w.class = Some(class);
    w.g = g.coeffs().to_vec();
    w.n = Some(n);
    w.k = Some(k);
    w.nu = Some(oracle::gcd(k, q - 1));
    w.m = Some(oracle::gcd(k + 1, q - 1));
    w.mu = Some(coll.mu);
    w.fiber_profile = Some(coll.fiber_profile.clone());
    w.bounds.push(main_bound(q, n, k)?);
    if is_monomial(g) {
        w.bounds.push(monomial_bound(q, n, k)?);
        if class == FormClass::L1AndL2 {
            w.curve = Some(curve_affine_count(field, k, coll.normalized.b, g.leading_coefficient())?);
        }
    }
    Ok((w, coll))
}

/// Recomputes a pair witness from its inputs.
pub fn replay(w: &Witness) -> Result<Witness> {
    let (Some(form), Some(n)) = (&w.form, w.n) else {
        return Err(HarnessError::ConfigInvalid("witness has no form to replay".into()));
    };
    let spec = FieldSpec::new(w.p, w.r);
    let field = spec.build()?;
    let form = CarlitzForm::new(&field, form.coeffs().to_vec())?;
    let g = Poly::new(w.g.clone());
    let (mut again, _) = hit_witness(spec, &field, &form, &g, n, &w.reason)?;
    again.detail = w.detail.clone();
    Ok(again)
}

/// Stable campaign tags for seeding cell streams.
pub(crate) mod tag {
    pub const MAIN: u64 = 1;
    pub const MONOMIAL: u64 = 2;
    pub const MU: u64 = 5;
    pub const CURVE: u64 = 6;
}

/// Positions per parallel chunk.
pub(crate) const CHUNK: u64 = 1 << 14;
