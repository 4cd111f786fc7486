//! One function per verb, each producing an [`Output`].

use std::sync::Arc;

use burnside_core::{
    check_commutes, construct_group, deflate, fixed_points, fw_apply, idempotent, induce, inflate, m_cyclic, restrict,
    tensor_induce, BisetOp, BurnsideElement, BurnsideRing, CommutativityReport, Embedding, FwContext, Group,
    Projection, Subgroup,
};
use serde_json::{json, Value};

use crate::error::CliResult;
use crate::output::Output;
use crate::selector::Selector;
use crate::serial::{element_to_json, rational_to_string, read_element};
use crate::survey::{run_survey, SurveyRow, COLUMNS};

fn build(spec: &str, cap: usize) -> CliResult<Arc<Group>> {
    Ok(Arc::new(construct_group(spec, cap)?))
}

fn subgroup_json(ring: &BurnsideRing, h: &Subgroup) -> CliResult<Value> {
    Ok(json!({"label": ring.class_label(ring.class_of(h)?), "order": h.order()}))
}

fn element_rows(x: &BurnsideElement) -> Vec<Vec<String>> {
    let ring = x.ring();
    x.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| vec![ring.class_label(i), rational_to_string(c)])
        .collect()
}

fn element_output(mut meta: Value, x: &BurnsideElement) -> Output {
    meta["result"] = element_to_json(x);
    Output::new(meta, &["label", "coefficient"], element_rows(x))
}

pub fn group(spec: &str, cap: usize) -> CliResult<Output> {
    let g = build(spec, cap)?;
    let z = burnside_core::center(&g);
    let json = json!({
        "group": g.label(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "exponent": g.exponent(),
        "center_order": z.order(),
    });
    let rows = ["group", "order", "abelian", "exponent", "center_order"]
        .iter()
        .map(|k| vec![k.to_string(), json[k].to_string().trim_matches('"').to_string()])
        .collect();
    Ok(Output::new(json, &["property", "value"], rows))
}

pub fn lattice(spec: &str, cap: usize) -> CliResult<Output> {
    let g = build(spec, cap)?;
    let ring = BurnsideRing::new(&g);
    let lat = ring.lattice();
    let mut classes = Vec::new();
    let mut rows = Vec::new();
    for c in 0..ring.rank() {
        let rep = lat.class_rep(c);
        let h = lat.subgroup(rep);
        let normalizer = lat.subgroup(lat.normalizer_index(rep)).order();
        let entry = json!({
            "label": ring.class_label(c),
            "order": h.order(),
            "conjugates": lat.class_members(c).len(),
            "normalizer_order": normalizer,
            "normalizer_index": g.order() / normalizer,
            "normal": h.is_normal(),
            "cyclic": h.is_cyclic(),
        });
        rows.push(
            [
                "label",
                "order",
                "conjugates",
                "normalizer_order",
                "normalizer_index",
                "normal",
                "cyclic",
            ]
            .iter()
            .map(|k| entry[k].to_string().trim_matches('"').to_string())
            .collect(),
        );
        classes.push(entry);
    }
    let json = json!({
        "group": g.label(),
        "order": g.order(),
        "subgroup_count": lat.len(),
        "class_count": ring.rank(),
        "classes": classes,
        "frattini": subgroup_json(&ring, &lat.frattini())?,
        "max_cyclic_intersection": subgroup_json(&ring, &lat.max_cyclic_intersection())?,
    });
    Ok(Output::new(
        json,
        &[
            "label",
            "order",
            "conjugates",
            "normalizer_order",
            "normalizer_index",
            "normal",
            "cyclic",
        ],
        rows,
    ))
}

pub fn marks(spec: &str, cap: usize) -> CliResult<Output> {
    let ring = BurnsideRing::new(&build(spec, cap)?);
    let labels: Vec<String> = (0..ring.rank()).map(|c| ring.class_label(c)).collect();
    let table: Vec<Vec<u64>> = (0..ring.rank())
        .map(|h| (0..ring.rank()).map(|k| ring.mark(h, k)).collect())
        .collect();
    let rows = table
        .iter()
        .zip(&labels)
        .map(|(row, label)| {
            std::iter::once(label.clone())
                .chain(row.iter().map(u64::to_string))
                .collect()
        })
        .collect();
    let mut header = vec!["G/H \\ K".to_string()];
    header.extend(labels.iter().cloned());
    Ok(Output {
        json: json!({"group": ring.group().label(), "labels": labels, "marks": table}),
        header,
        rows,
    })
}

pub fn idempotents(spec: &str, cap: usize) -> CliResult<Output> {
    let ring = BurnsideRing::new(&build(spec, cap)?);
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for c in 0..ring.rank() {
        let e = idempotent(&ring, c);
        let label = ring.class_label(c);
        for term in element_rows(&e) {
            rows.push(std::iter::once(label.clone()).chain(term).collect());
        }
        entries.push(json!({"label": label, "element": element_to_json(&e)}));
    }
    Ok(Output::new(
        json!({"group": ring.group().label(), "idempotents": entries}),
        &["idempotent", "label", "coefficient"],
        rows,
    ))
}

/// `m_{T,N}` beside the cyclic value for every class of subgroups `T >= N`.
pub fn mconst(spec: &str, selector: Selector, cap: usize) -> CliResult<Output> {
    let ring = BurnsideRing::new(&build(spec, cap)?);
    let lat = ring.lattice();
    let n = selector.resolve(&ring)?;
    if !n.is_normal() {
        return Err(burnside_core::Error::NotNormal.into());
    }
    let ni = lat.locate(&n)?;
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut all_equal = true;
    for c in 0..ring.rank() {
        let containing: Vec<usize> = lat
            .class_members(c)
            .iter()
            .copied()
            .filter(|&t| lat.is_below(ni, t))
            .collect();
        let Some(&t) = containing.first() else { continue };
        let order = lat.subgroup(t).order();
        let m = lat.m_constant_index(t, ni)?;
        let mc = m_cyclic(order, n.order())?;
        all_equal &= m == mc;
        let entry = json!({
            "label": ring.class_label(c),
            "order": order,
            "containing_conjugates": containing.len(),
            "m": rational_to_string(&m),
            "m_cyclic": rational_to_string(&mc),
            "equal": m == mc,
        });
        rows.push(
            ["label", "order", "containing_conjugates", "m", "m_cyclic", "equal"]
                .iter()
                .map(|k| entry[k].to_string().trim_matches('"').to_string())
                .collect(),
        );
        entries.push(entry);
    }
    Ok(Output::new(
        json!({
            "group": ring.group().label(),
            "subgroup": {"selector": selector.to_string(), "order": n.order()},
            "overgroups": entries,
            "m_equal": all_equal,
        }),
        &["label", "order", "containing_conjugates", "m", "m_cyclic", "equal"],
        rows,
    ))
}

/// Applies a biset operation. The element lives over the source group of the
/// operation: `G` for res/def/fix, the selected `H` for ind/ten, `G/N` for inf.
pub fn op(op: BisetOp, spec: &str, selector: Selector, element: &str, cap: usize) -> CliResult<Output> {
    let ring = BurnsideRing::new(&build(spec, cap)?);
    let sub = selector.resolve(&ring)?;
    let result = match op {
        BisetOp::Res => restrict(&read_element(&ring, element)?, &Embedding::of_subgroup(&ring, &sub)?)?,
        BisetOp::Ind | BisetOp::Ten => {
            let emb = Embedding::of_subgroup(&ring, &sub)?;
            let x = read_element(emb.source(), element)?;
            if op == BisetOp::Ind {
                induce(&x, &emb)?
            } else {
                tensor_induce(&x, &emb)?
            }
        }
        BisetOp::Inf => {
            let proj = Projection::new(&ring, &sub)?;
            inflate(&read_element(proj.target(), element)?, &proj)?
        }
        BisetOp::Def | BisetOp::Fix => {
            let proj = Projection::new(&ring, &sub)?;
            let x = read_element(&ring, element)?;
            if op == BisetOp::Def {
                deflate(&x, &proj)?
            } else {
                fixed_points(&x, &proj)?
            }
        }
    };
    let meta = json!({
        "op": op.to_string(),
        "group": ring.group().label(),
        "subgroup": {"selector": selector.to_string(), "order": sub.order()},
        "result_group_order": result.ring().group().order(),
    });
    Ok(element_output(meta, &result))
}

/// The element is over the cyclic group of order `|G|`.
pub fn fw_apply_cmd(spec: &str, element: &str, cap: usize) -> CliResult<Output> {
    let ctx = FwContext::new(&build(spec, cap)?);
    let x = read_element(ctx.cyclic_ring(), element)?;
    let image = fw_apply(&ctx, &x)?;
    let meta = json!({
        "group": ctx.group_ring().group().label(),
        "cyclic_order": ctx.order(),
        "source": element_to_json(&x),
    });
    Ok(element_output(meta, &image))
}

pub fn report_json(report: &CommutativityReport) -> Value {
    let certificate = report.certificate.as_ref().map(|c| {
        json!({
            "element": element_to_json(&c.element),
            "group_route": element_to_json(&c.group_route),
            "cyclic_route": element_to_json(&c.cyclic_route),
        })
    });
    json!({
        "op": report.op.to_string(),
        "commutes": report.commutes,
        "basis_size": report.basis_size,
        "certificate": certificate,
    })
}

pub fn fw_check(op: BisetOp, spec: &str, selector: Selector, cap: usize) -> CliResult<Output> {
    let ctx = FwContext::new(&build(spec, cap)?);
    let sub = selector.resolve(ctx.group_ring())?;
    let report = check_commutes(&ctx, op, &sub)?;
    let mut json = report_json(&report);
    json["group"] = json!(ctx.group_ring().group().label());
    json["subgroup"] = json!({"selector": selector.to_string(), "order": sub.order()});
    let cert = |f: fn(&burnside_core::Certificate) -> &BurnsideElement| {
        report
            .certificate
            .as_ref()
            .map(|c| element_to_json(f(c)).to_string())
            .unwrap_or_default()
    };
    let row = vec![
        ctx.group_ring().group().label().to_string(),
        op.to_string(),
        selector.to_string(),
        sub.order().to_string(),
        report.commutes.to_string(),
        report.basis_size.to_string(),
        cert(|c| &c.element),
        cert(|c| &c.group_route),
        cert(|c| &c.cyclic_route),
    ];
    Ok(Output::new(
        json,
        &[
            "group",
            "op",
            "subgroup",
            "order",
            "commutes",
            "basis_size",
            "element",
            "group_route",
            "cyclic_route",
        ],
        vec![row],
    ))
}

pub fn survey(catalog: &[String], ops: &[BisetOp], cap: usize, parallel: bool) -> Output {
    let rows: Vec<SurveyRow> = run_survey(catalog, ops, cap, parallel);
    let cells: Vec<Vec<String>> = rows.iter().map(SurveyRow::cells).collect();
    let json = Value::Array(
        cells
            .iter()
            .map(|row| {
                Value::Object(
                    COLUMNS
                        .iter()
                        .zip(row)
                        .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                        .collect(),
                )
            })
            .collect(),
    );
    Output::new(json, &COLUMNS, cells)
}
