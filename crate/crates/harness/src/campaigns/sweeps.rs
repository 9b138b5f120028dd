use carlitz_core::bounds::{collision_count, curve_affine_count, k1_mu_formula, CurveCountReport};
use carlitz_core::{CarlitzForm, Elem, Field, FormSpace, Poly};
use rand::Rng;

use super::tag;
use crate::config::{CampaignConfig, FieldSpec};
use crate::error::Result;
use crate::exec::{cell_rng, Exec, Selection};
use crate::oracle;
use crate::report::{CampaignReport, CellSummary, Witness};

/// Closed form of the hyperbola pair count for every `b̃`, then sampled
/// collision tallies against the pair-scan oracle.
pub fn mu_sweep(cfg: &CampaignConfig, exec: &Exec) -> Result<CampaignReport> {
    let mut report = CampaignReport::new(cfg);
    for &spec in &cfg.fields {
        let FieldCtxLite { field, q } = FieldCtxLite::build(spec)?;
        let values: Vec<Elem> = field.nonzero_elements().collect();
        let counts = exec.map(&values, |&b| (oracle::hyperbola_pairs(&field, b), k1_mu_formula(&field, b)));
        let mut cell = CellSummary::new(spec.p, spec.r, q);
        cell.k = Some(1);
        cell.space = q - 1;
        cell.note = Some("hyperbola".into());
        for (&b, (brute, formula)) in values.iter().zip(counts) {
            let formula = formula?;
            cell.tested += 1;
            if brute != formula {
                let mut w = Witness::new("hyperbola_count_differs_from_formula", spec.p, spec.r, q);
                w.detail = Some(format!("b={} brute={brute} formula={formula}", b.code()));
                report.counterexamples.push(w);
                cell.failures += 1;
            }
        }
        report.counts.pairs_tested += cell.tested;
        report.cells.push(cell);

        // Samples are drawn serially from the field's stream, then checked in parallel.
        let mut rng = cell_rng(cfg.seed, &[tag::MU, spec.p, spec.r as u64]);
        let k_top = cfg.k_max.min(q - 2);
        let mut samples: Vec<(CarlitzForm, Poly)> = Vec::with_capacity(cfg.budget as usize);
        for _ in 0..cfg.budget {
            let form = loop {
                let n = rng.random_range(1..=cfg.n_max);
                let space = FormSpace::new(&field, n);
                let form = space.form_at(rng.random_range(0..space.len()));
                if form.classify(&field).in_l1() {
                    break form;
                }
            };
            let k = rng.random_range(1..=k_top) as usize;
            let mut coeffs: Vec<Elem> = (0..k).map(|_| Elem(rng.random_range(0..q) as u32)).collect();
            coeffs.push(Elem(rng.random_range(1..q) as u32));
            samples.push((form, Poly::new(coeffs)));
        }
        report.counts.forms_scanned += samples.len() as u64;
        let checked = exec.map(&samples, |(form, g)| -> Result<_> {
            let rep = collision_count(&field, form, g)?;
            Ok((rep, oracle::collision_pairs(&field, form, g)))
        });
        let mut cell = CellSummary::new(spec.p, spec.r, q);
        cell.space = samples.len() as u64;
        cell.exhaustive = false;
        cell.note = Some("collisions".into());
        for ((form, g), result) in samples.iter().zip(checked) {
            let (rep, brute) = result?;
            cell.tested += 1;
            let bad = if rep.mu != brute {
                Some("collision_count_differs_from_pair_scan")
            } else if !rep.fiber_bound_holds() {
                Some("fiber_exceeds_k_plus_one")
            } else {
                None
            };
            if let Some(reason) = bad {
                let mut w = Witness::new(reason, spec.p, spec.r, q);
                w.form = Some(form.clone());
                w.g = g.coeffs().to_vec();
                w.k = Some(rep.k);
                w.mu = Some(rep.mu);
                w.detail = Some(format!("pair_scan={brute}"));
                report.counterexamples.push(w);
                cell.failures += 1;
            }
        }
        report.counts.pairs_tested += cell.tested;
        report.cells.push(cell);
    }
    report.finish();
    Ok(report)
}

/// Fast point counts against the double loop over a `(q, k)` grid with
/// sampled `(b, c)`.
pub fn curve_sweep(cfg: &CampaignConfig, exec: &Exec) -> Result<CampaignReport> {
    let mut report = CampaignReport::new(cfg);
    for &spec in &cfg.fields {
        let FieldCtxLite { field, q } = FieldCtxLite::build(spec)?;
        for k in 1..=cfg.k_max.min(q - 2) {
            let space = (q - 1) * (q - 1);
            let sel = Selection::choose(space, cfg.budget, cfg.seed, &[tag::CURVE, spec.p, spec.r as u64, k]);
            let picks: Vec<(Elem, Elem)> = (0..sel.len())
                .map(|pos| {
                    let idx = sel.get(pos);
                    (Elem(1 + (idx / (q - 1)) as u32), Elem(1 + (idx % (q - 1)) as u32))
                })
                .collect();
            let results = exec.map(&picks, |&(b, c)| -> Result<_> {
                let rep = curve_affine_count(&field, k, b, c)?;
                let brute = oracle::curve_points(&field, k, b, c);
                let parabola = oracle::parabola_points(&field, k, b, c);
                Ok((rep, brute, parabola))
            });
            let mut cell = CellSummary::new(spec.p, spec.r, q);
            cell.k = Some(k);
            cell.space = space;
            cell.exhaustive = sel.is_exhaustive();
            let m = oracle::gcd(k + 1, q - 1);
            cell.note = Some(format!("m={m} genus={}", oracle::genus(q, k)));
            for result in results {
                let (rep, (literal, reduced), parabola) = result?;
                cell.tested += 1;
                let mut fail = |reason: &str, rep: &CurveCountReport, report: &mut CampaignReport| {
                    let mut w = Witness::new(reason, spec.p, spec.r, q);
                    w.k = Some(k);
                    w.m = Some(rep.m);
                    w.curve = Some(rep.clone());
                    w.detail =
                        Some(format!("brute_literal={literal} brute_reduced={reduced} brute_parabola={parabola}"));
                    report.counterexamples.push(w);
                    cell.failures += 1;
                };
                if rep.affine_count != literal || rep.kummer_affine_count != reduced {
                    fail("fast_count_differs_from_double_loop", &rep, &mut report);
                }
                if rep.floor_applies() && !rep.floor_holds {
                    fail("count_below_floor", &rep, &mut report);
                }
                if rep.parabola_intersections != parabola || parabola > 3 * k + 1 {
                    fail("parabola_count", &rep, &mut report);
                }
                if rep.genus != oracle::genus(q, k) || rep.m != m {
                    fail("genus", &rep, &mut report);
                }
                if rep.floor_applies() && !rep.literal_floor_holds {
                    let mut w = Witness::new("literal_count_below_floor", spec.p, spec.r, q);
                    w.k = Some(k);
                    w.m = Some(rep.m);
                    w.curve = Some(rep);
                    report.informational.push(w);
                }
            }
            report.counts.pairs_tested += cell.tested;
            report.cells.push(cell);
        }
    }
    report.finish();
    Ok(report)
}

struct FieldCtxLite {
    field: Field,
    q: u64,
}

impl FieldCtxLite {
    fn build(spec: FieldSpec) -> Result<Self> {
        let field = spec.build()?;
        let q = field.order() as u64;
        Ok(FieldCtxLite { field, q })
    }
}
