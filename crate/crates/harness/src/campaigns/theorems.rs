use carlitz_core::bounds::{
    collision_count, curve_affine_count, main_bound, main_mu_floor, monomial_bound, monomial_mu_floor,
    pole_consistency, CollisionReport,
};
use carlitz_core::{Elem, Error as CoreError, FormClass, PermMap, Poly};

use super::{g_count, g_from_index, hit_witness, tag, FieldCtx, RankedPerm, CHUNK};
use crate::config::CampaignConfig;
use crate::error::Result;
use crate::exec::{Exec, Selection};
use crate::oracle;
use crate::report::{CampaignReport, CellSummary, Records, Witness};

/// What one chunk of a pair cell found.
#[derive(Default)]
struct ChunkOut {
    tested: u64,
    hits: u64,
    min_k: Option<u64>,
    counterexamples: Vec<Witness>,
    discrepancies: Records,
    first_hit: Option<Witness>,
}

impl ChunkOut {
    fn merge(&mut self, other: ChunkOut) {
        self.tested += other.tested;
        self.hits += other.hits;
        self.min_k = match (self.min_k, other.min_k) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.counterexamples.extend(other.counterexamples);
        self.discrepancies.extend(other.discrepancies);
        if self.first_hit.is_none() {
            self.first_hit = other.first_hit;
        }
    }
}

/// Checks shared by both theorems on one permutation pair and one `L1`
/// representation of `f`.
fn check_collisions(out: &mut ChunkOut, coll: &CollisionReport, make: &dyn Fn(&str) -> Result<Witness>) -> Result<()> {
    if !coll.fiber_bound_holds() {
        out.counterexamples.push(make("fiber_exceeds_k_plus_one")?);
    }
    if !pole_consistency(coll) {
        out.counterexamples.push(make("pole_count_below_collisions")?);
    }
    Ok(())
}

/// Guards exhaustive cells against the configured pair cap.
struct Planner {
    planned: u64,
    limit: u64,
}

impl Planner {
    fn plan(&mut self, sel: &Selection) -> Result<()> {
        self.planned += sel.len();
        if self.planned > self.limit {
            return Err(CoreError::BudgetExceeded { limit: self.limit }.into());
        }
        Ok(())
    }
}

fn first_hits(report: &mut CampaignReport, mut out: ChunkOut, cell: &mut CellSummary) {
    cell.tested = out.tested;
    cell.hits = out.hits;
    cell.failures = out.counterexamples.len() as u64;
    cell.min_k = out.min_k;
    report.counts.pairs_tested += out.tested;
    report.counts.permutation_hits += out.hits;
    report.counterexamples.append(&mut out.counterexamples);
    report.discrepancies.extend(out.discrepancies);
    if let Some(w) = out.first_hit {
        report.notable.push(w);
    }
}

/// Every `L1` permutation of rank `n ≤ n_max` against every `g` of degree
/// `1 ≤ k ≤ k_max`.
pub fn verify_main(cfg: &CampaignConfig, exec: &Exec) -> Result<CampaignReport> {
    let mut report = CampaignReport::new(cfg);
    let mut planner = Planner { planned: 0, limit: cfg.max_pairs };
    for &spec in &cfg.fields {
        let ctx = FieldCtx::build(spec, cfg.n_max, exec)?;
        report.counts.forms_scanned += ctx.forms_scanned;
        let q = ctx.q;
        for n in 1..=cfg.n_max {
            let perms = ctx.filtered(n, FormClass::in_l1);
            for k in 1..=cfg.k_max.min(q - 2) {
                let space = perms.len() as u64 * g_count(q, k);
                let sel =
                    Selection::choose(space, cfg.budget, cfg.seed, &[tag::MAIN, spec.p, spec.r as u64, n as u64, k]);
                planner.plan(&sel)?;
                let chunks = sel.chunks(CHUNK);
                let outs = exec.map(&chunks, |&(s, e)| main_chunk(&ctx, &perms, n as u64, k, &sel, s, e));
                let mut total = ChunkOut::default();
                for out in outs {
                    total.merge(out?);
                }
                let mut cell = CellSummary::new(spec.p, spec.r, q);
                cell.n = Some(n as u64);
                cell.k = Some(k);
                cell.space = space;
                cell.exhaustive = sel.is_exhaustive();
                first_hits(&mut report, total, &mut cell);
                report.cells.push(cell);
            }
        }
    }
    report.finish();
    Ok(report)
}

fn main_chunk(
    ctx: &FieldCtx,
    perms: &[RankedPerm],
    n: u64,
    k: u64,
    sel: &Selection,
    start: u64,
    end: u64,
) -> Result<ChunkOut> {
    let field = &ctx.field;
    let q = ctx.q;
    let np = perms.len() as u64;
    let mut out = ChunkOut::default();
    let bound = main_bound(q, n, k)?;
    let mut current: Option<(u64, Poly, PermMap)> = None;
    for pos in start..end {
        let idx = sel.get(pos);
        let (gi, pi) = (idx / np, idx % np);
        if current.as_ref().is_none_or(|(i, _, _)| *i != gi) {
            let g = g_from_index(q, k, gi);
            let gm = g.to_map(field);
            current = Some((gi, g, gm));
        }
        let (_, g, gm) = current.as_ref().unwrap();
        let perm = &perms[pi as usize];
        out.tested += 1;
        let hit = perm.map.sum_is_permutation(field, gm);
        let sum = perm.map.add_map(field, gm);
        if hit != oracle::is_bijective(sum.images()) {
            let mut w = hit_witness(ctx.spec, field, &perm.forms[0], g, n, "permutation_test_disagrees_with_oracle")?.0;
            w.detail = Some(format!("fast={hit}"));
            out.counterexamples.push(w);
            continue;
        }
        if !hit {
            continue;
        }
        out.hits += 1;
        out.min_k = Some(k);
        let make =
            |reason: &str| -> Result<Witness> { Ok(hit_witness(ctx.spec, field, &perm.forms[0], g, n, reason)?.0) };
        if !bound.holds {
            out.counterexamples.push(make("main_bound_violated")?);
        }
        if bound.holds != oracle::main_bound(q, n, k) {
            out.counterexamples.push(make("main_bound_disagrees_with_oracle")?);
        }
        for form in &perm.forms {
            let coll = collision_count(field, form, g)?;
            let make = |reason: &str| -> Result<Witness> { Ok(hit_witness(ctx.spec, field, form, g, n, reason)?.0) };
            check_collisions(&mut out, &coll, &make)?;
            if !main_mu_floor(q, k, coll.mu).holds() {
                out.discrepancies.push(make("mu_below_proof_estimate")?);
            }
        }
        if out.first_hit.is_none() {
            out.first_hit = Some(make("first_hit")?);
        }
    }
    Ok(out)
}

/// Every `L1 ∩ L2` permutation of rank `n ≤ n_max` against `c x^k` for all
/// `c ≠ 0` and `1 ≤ k ≤ k_max`.
pub fn verify_monomial(cfg: &CampaignConfig, exec: &Exec) -> Result<CampaignReport> {
    let mut report = CampaignReport::new(cfg);
    let mut planner = Planner { planned: 0, limit: cfg.max_pairs };
    for &spec in &cfg.fields {
        let ctx = FieldCtx::build(spec, cfg.n_max, exec)?;
        report.counts.forms_scanned += ctx.forms_scanned;
        let q = ctx.q;
        for n in 1..=cfg.n_max {
            let perms = ctx.filtered(n, |c| c == FormClass::L1AndL2);
            let mut level_best: Option<(u64, Witness)> = None;
            for k in 1..=cfg.k_max.min(q - 2) {
                let space = perms.len() as u64 * (q - 1);
                let sel = Selection::choose(
                    space,
                    cfg.budget,
                    cfg.seed,
                    &[tag::MONOMIAL, spec.p, spec.r as u64, n as u64, k],
                );
                planner.plan(&sel)?;
                let chunks = sel.chunks(CHUNK);
                let outs = exec.map(&chunks, |&(s, e)| monomial_chunk(&ctx, &perms, n as u64, k, &sel, s, e));
                let mut total = ChunkOut::default();
                for out in outs {
                    total.merge(out?);
                }
                if level_best.is_none() {
                    if let Some(w) = total.first_hit.take() {
                        level_best = Some((k, w));
                    }
                }
                total.first_hit = None;
                let mut cell = CellSummary::new(spec.p, spec.r, q);
                cell.n = Some(n as u64);
                cell.k = Some(k);
                cell.space = space;
                cell.exhaustive = sel.is_exhaustive();
                if let Ok(b) = monomial_bound(q, n as u64, k) {
                    cell.note =
                        Some(format!("m={} bound={}", b.m.unwrap_or(0), if b.holds { "open" } else { "excluded" }));
                }
                first_hits(&mut report, total, &mut cell);
                report.cells.push(cell);
            }
            if let Some((_, mut w)) = level_best {
                w.reason = "least_k_hit".into();
                report.notable.push(w);
            }
        }
    }
    report.finish();
    Ok(report)
}

fn monomial_chunk(
    ctx: &FieldCtx,
    perms: &[RankedPerm],
    n: u64,
    k: u64,
    sel: &Selection,
    start: u64,
    end: u64,
) -> Result<ChunkOut> {
    let field = &ctx.field;
    let q = ctx.q;
    let np = perms.len() as u64;
    let mut out = ChunkOut::default();
    let mono = monomial_bound(q, n, k)?;
    let main = main_bound(q, n, k)?;
    let m = oracle::gcd(k + 1, q - 1);
    for pos in start..end {
        let idx = sel.get(pos);
        let (ci, pi) = (idx / np, idx % np);
        let c = Elem(1 + ci as u32);
        let g = Poly::monomial(c, k as usize);
        let gm = g.to_map(field);
        let perm = &perms[pi as usize];
        out.tested += 1;
        let hit = perm.map.sum_is_permutation(field, &gm);
        if hit != oracle::is_bijective(perm.map.add_map(field, &gm).images()) {
            out.counterexamples
                .push(hit_witness(ctx.spec, field, &perm.forms[0], &g, n, "permutation_test_disagrees_with_oracle")?.0);
            continue;
        }
        if !hit {
            continue;
        }
        out.hits += 1;
        out.min_k = Some(k);
        let make =
            |reason: &str| -> Result<Witness> { Ok(hit_witness(ctx.spec, field, &perm.forms[0], &g, n, reason)?.0) };
        if !mono.holds {
            out.counterexamples.push(make("monomial_bound_violated")?);
        }
        if mono.holds != oracle::monomial_bound(q, n, k) {
            out.counterexamples.push(make("monomial_bound_disagrees_with_oracle")?);
        }
        if m == 1 && k * (n + 3) + n < q {
            out.counterexamples.push(make("k_below_coprime_threshold")?);
        }
        if !main.holds {
            out.counterexamples.push(make("main_bound_violated")?);
        }
        for form in &perm.forms {
            let coll = collision_count(field, form, &g)?;
            let make = |reason: &str| -> Result<Witness> { Ok(hit_witness(ctx.spec, field, form, &g, n, reason)?.0) };
            check_collisions(&mut out, &coll, &make)?;
            let curve = curve_affine_count(field, k, coll.normalized.b, c)?;
            if curve.affine_count != coll.mu {
                out.counterexamples.push(make("collisions_differ_from_curve_points")?);
            }
            if !monomial_mu_floor(q, k, coll.mu).holds() {
                out.discrepancies.push(make("mu_below_proof_estimate")?);
            }
        }
        if out.first_hit.is_none() {
            out.first_hit = Some(make("first_hit")?);
        }
    }
    Ok(out)
}

/// No `L1` permutation of rank `n < (q-1)/2` is a complete mapping.
pub fn verify_corollary(cfg: &CampaignConfig, exec: &Exec) -> Result<CampaignReport> {
    let mut report = CampaignReport::new(cfg);
    for &spec in &cfg.fields {
        let ctx = FieldCtx::build(spec, cfg.n_max, exec)?;
        report.counts.forms_scanned += ctx.forms_scanned;
        let field = &ctx.field;
        let q = ctx.q;
        let identity = PermMap::identity(field);
        for n in 1..=cfg.n_max {
            let level = &ctx.levels[n];
            let forms: u64 = level.iter().map(|rp| rp.forms.len() as u64).sum();
            let mut cell = CellSummary::new(spec.p, spec.r, q);
            cell.n = Some(n as u64);
            cell.space = forms;
            if 2 * n as u64 + 1 >= q {
                report.counts.out_of_hypothesis += forms;
                cell.note = Some("out_of_hypothesis".into());
                report.cells.push(cell);
                continue;
            }
            let verdicts: Vec<Result<(bool, bool)>> = exec.map(level, |rp| {
                let fast = rp.map.is_complete_mapping(field);
                let slow = oracle::is_bijective(rp.map.add_map(field, &identity).images());
                Ok((fast, slow))
            });
            for (rp, verdict) in level.iter().zip(verdicts) {
                let (fast, slow) = verdict?;
                cell.tested += rp.forms.len() as u64;
                for form in &rp.forms {
                    let class = form.classify(field);
                    let record = |reason: &str| {
                        let mut w = Witness::new(reason, spec.p, spec.r, q);
                        w.form = Some(form.clone());
                        w.class = Some(class);
                        w.n = Some(n as u64);
                        w
                    };
                    if fast != slow {
                        report.counterexamples.push(record("complete_mapping_test_disagrees_with_oracle"));
                        cell.failures += 1;
                    } else if fast && class.in_l1() {
                        report.counterexamples.push(record("l1_complete_mapping_below_half_q"));
                        cell.failures += 1;
                    } else if fast {
                        report.informational.push(record("complete_mapping_outside_l1"));
                    }
                    if fast {
                        cell.hits += 1;
                    }
                }
            }
            report.counts.pairs_tested += cell.tested;
            report.counts.permutation_hits += cell.hits;
            report.cells.push(cell);
        }
    }
    report.finish();
    Ok(report)
}
