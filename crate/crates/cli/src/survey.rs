//! Catalog surveys: one row per (group, normal subgroup).

use std::collections::BTreeSet;
use std::sync::Arc;

use burnside_core::{check_commutes, check_m_equality, construct_group, BisetOp, FwContext, GcdMethod, Subgroup};
use rayon::prelude::*;

use crate::error::{CliError, CliResult};
use crate::selector::Selector;

pub const COLUMNS: [&str; 13] = [
    "group",
    "|G|",
    "N-selector",
    "|N|",
    "gcd",
    "cyclic",
    "central",
    "m_equal",
    "commutes_inf",
    "commutes_ind",
    "commutes_ten",
    "commutes_def",
    "error",
];

/// Operations a survey can check; `ind` and `ten` use `N` as the source subgroup.
pub const SURVEY_OPS: [BisetOp; 4] = [BisetOp::Inf, BisetOp::Ind, BisetOp::Ten, BisetOp::Def];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurveyRow {
    pub group: String,
    pub order: Option<usize>,
    pub selector: Option<Selector>,
    pub normal_order: Option<usize>,
    pub gcd: Option<bool>,
    pub cyclic: Option<bool>,
    pub central: Option<bool>,
    pub m_equal: Option<bool>,
    pub commutes_inf: Option<bool>,
    pub commutes_ind: Option<bool>,
    pub commutes_ten: Option<bool>,
    pub commutes_def: Option<bool>,
    pub error: Option<String>,
}

impl SurveyRow {
    pub fn cells(&self) -> Vec<String> {
        fn opt<T: ToString>(v: &Option<T>) -> String {
            v.as_ref().map(T::to_string).unwrap_or_default()
        }
        vec![
            self.group.clone(),
            opt(&self.order),
            opt(&self.selector),
            opt(&self.normal_order),
            opt(&self.gcd),
            opt(&self.cyclic),
            opt(&self.central),
            opt(&self.m_equal),
            opt(&self.commutes_inf),
            opt(&self.commutes_ind),
            opt(&self.commutes_ten),
            opt(&self.commutes_def),
            opt(&self.error),
        ]
    }
}

/// Reads a catalog: one group spec per line, blank lines and `#` comments ignored.
pub fn parse_catalog(text: &str) -> Vec<String> {
    text.lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn parse_ops(text: &str) -> CliResult<BTreeSet<usize>> {
    let mut picked = BTreeSet::new();
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name == "all" {
            picked.extend(0..SURVEY_OPS.len());
            continue;
        }
        let op: BisetOp = name.parse()?;
        let pos = SURVEY_OPS
            .iter()
            .position(|&o| o == op)
            .ok_or_else(|| CliError::Usage(format!("survey does not check {op}")))?;
        picked.insert(pos);
    }
    Ok(picked)
}

/// Rows come out in catalog order, then in canonical subgroup order, whatever
/// the evaluation order.
pub fn run_survey(catalog: &[String], ops: &[BisetOp], cap: usize, parallel: bool) -> Vec<SurveyRow> {
    let survey_group = |spec: &String| survey_group(spec.as_str(), ops, cap);
    let groups: Vec<Vec<SurveyRow>> = if parallel {
        catalog.par_iter().map(survey_group).collect()
    } else {
        catalog.iter().map(survey_group).collect()
    };
    groups.into_iter().flatten().collect()
}

fn survey_group(spec: &str, ops: &[BisetOp], cap: usize) -> Vec<SurveyRow> {
    let group = match construct_group(spec, cap) {
        Ok(g) => Arc::new(g),
        Err(e) => {
            return vec![SurveyRow {
                group: spec.to_string(),
                error: Some(e.to_string()),
                ..SurveyRow::default()
            }]
        }
    };
    let ctx = FwContext::new(&group);
    let ring = ctx.group_ring();
    let lat = ring.lattice();
    (0..ring.rank())
        .filter(|&c| ring.class_rep(c).is_normal())
        .map(|c| {
            let n = ring.class_rep(c);
            let label = ring.class_label(c);
            let (order, index) = label.split_once(':').expect("labels are order:index");
            let mut row = SurveyRow {
                group: spec.to_string(),
                order: Some(group.order()),
                selector: Some(Selector::Order {
                    order: order.parse().expect("numeric order"),
                    index: index.parse().expect("numeric index"),
                }),
                normal_order: Some(n.order()),
                gcd: Some(lat.check_gcd_property(n, GcdMethod::Intersection)),
                cyclic: Some(n.is_cyclic()),
                central: Some(n.is_central()),
                ..SurveyRow::default()
            };
            if let Err(e) = fill_checks(&ctx, n, ops, &mut row) {
                row.error = Some(e.to_string());
            }
            row
        })
        .collect()
}

fn fill_checks(ctx: &FwContext, n: &Subgroup, ops: &[BisetOp], row: &mut SurveyRow) -> burnside_core::Result<()> {
    row.m_equal = Some(check_m_equality(ctx, n)?);
    for &op in ops {
        let commutes = Some(check_commutes(ctx, op, n)?.commutes);
        match op {
            BisetOp::Inf => row.commutes_inf = commutes,
            BisetOp::Ind => row.commutes_ind = commutes,
            BisetOp::Ten => row.commutes_ten = commutes,
            BisetOp::Def => row.commutes_def = commutes,
            BisetOp::Res | BisetOp::Fix => {}
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn specs(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn cyclic_groups_commute_everywhere() {
        let catalog: Vec<String> = (1..=8).map(|n| format!("C{n}")).collect();
        let rows = run_survey(&catalog, &SURVEY_OPS, 512, false);
        assert_eq!(
            rows.len(),
            (1..=8).map(|n| burnside_core::arith::divisors(n).len()).sum::<usize>()
        );
        for row in rows {
            assert_eq!(row.error, None);
            for v in [
                row.gcd,
                row.m_equal,
                row.commutes_inf,
                row.commutes_ind,
                row.commutes_ten,
                row.commutes_def,
            ] {
                assert_eq!(v, Some(true), "{row:?}");
            }
        }
    }

    #[test]
    fn klein_four_deflation_fails() {
        let rows = run_survey(&specs(&["C2xC2"]), &[BisetOp::Def], 512, false);
        let order_two: Vec<_> = rows.iter().filter(|r| r.normal_order == Some(2)).collect();
        assert_eq!(order_two.len(), 3);
        assert!(order_two
            .iter()
            .all(|r| r.commutes_def == Some(false) && r.commutes_inf.is_none()));
    }

    #[test]
    fn centers_of_the_examples_deflate() {
        for spec in ["Q8", "Dic12", "SL(2,5)"] {
            let rows = run_survey(&specs(&[spec]), &[BisetOp::Def], 512, false);
            let z = rows
                .iter()
                .find(|r| r.normal_order == Some(2) && r.central == Some(true))
                .unwrap();
            assert_eq!(z.commutes_def, Some(true), "{spec}");
        }
    }

    #[test]
    fn bad_specs_become_error_rows() {
        let rows = run_survey(&specs(&["C4", "D5", "C10000"]), &SURVEY_OPS, 512, false);
        assert_eq!(rows.iter().filter(|r| r.error.is_some()).count(), 2);
        assert_eq!(rows.first().unwrap().group, "C4");
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let catalog = specs(&["S3", "D8", "Q8", "C6", "A4"]);
        assert_eq!(
            run_survey(&catalog, &SURVEY_OPS, 512, true),
            run_survey(&catalog, &SURVEY_OPS, 512, false)
        );
    }

    #[test]
    fn catalog_and_ops_parsing() {
        assert_eq!(parse_catalog("C2\n\n# comment\n S3 # trailing\n"), specs(&["C2", "S3"]));
        assert_eq!(
            parse_ops("def,inf").unwrap().into_iter().collect::<Vec<_>>(),
            vec![0, 3]
        );
        assert_eq!(parse_ops("all").unwrap().len(), 4);
        assert!(parse_ops("res").is_err());
        assert!(parse_ops("bogus").is_err());
    }
}
