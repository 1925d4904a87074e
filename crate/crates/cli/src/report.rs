//! The JSON report produced by `set eval`.

use polar_lines::algebra::rational::vec_to_strings;
use polar_lines::analysis::{
    design_check, divisibility_report, dual_distribution, inner_distribution, plane_profile, regular_set_check,
    support_of, DesignLevel, LineSet,
};
use polar_lines::constructions::{check_example, Example};
use polar_lines::{PolarSpace, Result, SchemeTables};
use serde_json::{json, Value};

pub const REPORT_VERSION: u32 = 1;

pub fn eval_report(space: &PolarSpace, tables: &SchemeTables, y: &LineSet, example: Option<Example>) -> Result<Value> {
    let n = space.num_lines();
    let mut r = json!({
        "schema_version": REPORT_VERSION,
        "space": space.fingerprint(),
        "name": y.name,
        "size": y.len(),
        "n": n,
    });
    if y.is_empty() || y.len() == n {
        r["trivial"] = json!(true);
        return Ok(r);
    }
    let a = inner_distribution(space, y)?;
    let aq = dual_distribution(tables, &a)?;
    let verdict = regular_set_check(space, tables, y)?;
    r["inner_distribution"] = json!(vec_to_strings(&a));
    r["dual_distribution"] = json!(vec_to_strings(&aq));
    r["support"] = json!(support_of(&aq).iter().map(|j| j.label()).collect::<Vec<_>>());
    r["regular"] = serde_json::to_value(&verdict)?;
    if let Some(j) = verdict.eigenspace {
        r["divisibility"] = serde_json::to_value(divisibility_report(y.len() as u64, j, &space.params())?)?;
    }
    r["plane_profile"] = serde_json::to_value(plane_profile(space, y))?;
    r["designs"] = json!([
        design_check(space, tables, y, DesignLevel::Points)?,
        design_check(space, tables, y, DesignLevel::Planes)?,
    ]);
    if let Some(e) = example {
        r["example"] = serde_json::to_value(check_example(space, tables, y, e, &space.params())?)?;
    }
    Ok(r)
}
