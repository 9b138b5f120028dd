use carlitz_core::rank::{carlitz_rank, default_cap};
use carlitz_core::{CarlitzForm, Elem, Poly};

use super::hit_witness;
use crate::config::{CampaignConfig, FieldSpec};
use crate::error::Result;
use crate::oracle;
use crate::report::{CampaignReport, CellSummary, ExampleRow, Witness};

/// `(((x + ζ⁵)^7 + ζ⁶)^7 + ζ³)^7` over `F_9` for every generator `ζ`, since
/// the example does not fix a model of the field.
pub fn example_f9(cfg: &CampaignConfig) -> Result<CampaignReport> {
    let mut report = CampaignReport::new(cfg);
    let spec = FieldSpec::new(3, 2);
    let field = spec.build()?;
    let q = field.order() as u64;
    let g = Poly::monomial(Elem::ONE, 2);
    let gm = g.to_map(&field);
    let mut cell = CellSummary::new(spec.p, spec.r, q);
    cell.n = Some(3);
    cell.k = Some(2);
    for zeta in field.generators() {
        let coeffs = vec![Elem::ONE, field.pow(zeta, 5), field.pow(zeta, 6), field.pow(zeta, 3), Elem::ZERO];
        let form = CarlitzForm::new(&field, coeffs)?;
        let map = form.expand(&field);
        let is_permutation = oracle::is_bijective(map.images());
        let rank = carlitz_rank(&field, &map, default_cap(&field))?.rank().map(|r| r as u64);
        let plus = oracle::is_bijective(map.add_map(&field, &gm).images());
        let passes = is_permutation && rank == Some(3) && plus;
        cell.space += 1;
        cell.tested += 1;
        if passes {
            cell.hits += 1;
            let mut w = if form.classify(&field).in_l1() {
                hit_witness(spec, &field, &form, &g, 3, "example_reproduced")?.0
            } else {
                let mut w = Witness::new("example_reproduced", spec.p, spec.r, q);
                w.form = Some(form.clone());
                w.g = g.coeffs().to_vec();
                w
            };
            w.detail = Some(format!("zeta={}", zeta.code()));
            report.notable.push(w);
        }
        report.example_rows.push(ExampleRow {
            zeta,
            class: form.classify(&field),
            form,
            is_permutation,
            rank,
            plus_x2_is_permutation: plus,
            passes,
        });
    }
    report.counts.forms_scanned = cell.tested;
    report.counts.pairs_tested = cell.tested;
    report.counts.permutation_hits = cell.hits;
    if cell.hits == 0 {
        report.counterexamples.push(Witness::new("no_generator_reproduces_example", spec.p, spec.r, q));
        cell.failures = 1;
    }
    report.cells.push(cell);
    report.finish();
    Ok(report)
}
