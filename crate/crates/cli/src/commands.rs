use graded_core::construction::PositionSets;
use graded_core::doc::resolve_names;
use graded_core::fixtures;
use graded_core::{
    build_das, monoid_counterexample, nonfree_check, nonfree_example, ConstructionError, FiniteCategory,
    FiniteGroupoid, GradedAction, GradedAlgebra, GradingError, GroupoidDoc, MorphismId, NonfreeVerdict, SelectionSpec,
    Subgroupoid, TheoremCheck,
};
use serde_json::{json, Map, Value};

use crate::report::{Format, Report};
use crate::GlobalArgs;

type Outcome = Result<Report, String>;

/// Subgroupoid enumeration is exhaustive, so it is capped.
const ENUMERATION_LIMIT: usize = 20;

struct Input {
    doc: GroupoidDoc,
    source: String,
    fixture: Option<String>,
}

fn load(g: &GlobalArgs) -> Result<Input, String> {
    match (&g.fixture, &g.input) {
        (Some(name), _) => {
            let doc = fixtures::doc(name).ok_or_else(|| {
                format!(
                    "unknown fixture {name:?}; known: {}",
                    fixtures::FIXTURE_NAMES.join(", ")
                )
            })?;
            Ok(Input {
                doc,
                source: format!("fixture:{name}"),
                fixture: Some(name.clone()),
            })
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let doc = GroupoidDoc::parse(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(Input {
                doc,
                source: format!("file:{}", path.display()),
                fixture: None,
            })
        }
        (None, None) => Err("an input is required: pass --fixture NAME or --input FILE".into()),
    }
}

fn selection_names(g: &GlobalArgs, doc: &GroupoidDoc) -> Option<Vec<String>> {
    match &g.selection {
        Some(list) => Some(split_names(list)),
        None => doc.selection.clone(),
    }
}

fn split_names(list: &str) -> Vec<String> {
    list.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

fn names(cat: &FiniteCategory, ids: &[MorphismId]) -> Value {
    Value::Array(ids.iter().map(|&s| json!(cat.name(s))).collect())
}

fn groupoid_of(input: &Input) -> Result<FiniteGroupoid, String> {
    input.doc.groupoid().map_err(|e| e.to_string())
}

fn spec_for(g: &GlobalArgs, input: &Input, cat: &FiniteCategory) -> Result<SelectionSpec, String> {
    let sel = selection_names(g, &input.doc)
        .ok_or("no selection: pass --selection or add a \"selection\" field to the document")?;
    SelectionSpec::from_names(cat.clone(), &sel).map_err(|e| e.to_string())
}

/// Grading of a groupoid document from its selection, for the commands that
/// need the action.
fn groupoid_grading(g: &GlobalArgs, input: &Input) -> Result<(FiniteGroupoid, SelectionSpec, GradedAlgebra), String> {
    let grp = groupoid_of(input)?;
    let spec = spec_for(g, input, grp.category())?;
    let ga = build_das(&spec).map_err(|e| e.to_string())?.graded;
    Ok((grp, spec, ga))
}

pub fn validate(g: &GlobalArgs, require_groupoid: bool) -> Outcome {
    let input = load(g)?;
    let mut report = Report::new("validate", &input.source);
    let cat = match input.doc.category() {
        Ok(cat) => cat,
        Err(e) => {
            report.verdict("category axioms", false, Some(e.to_string()));
            return Ok(report);
        }
    };
    report.verdict("category axioms", true, None);
    report.set("objects", json!(cat.object_count()));
    report.set("morphisms", json!(cat.morphism_count()));
    report.set("cancellative", json!(cat.is_cancellative().is_ok()));
    let groupoid = input.doc.groupoid();
    report.set("groupoid", json!(groupoid.is_ok()));
    if require_groupoid || input.doc.inverse.is_some() {
        report.verdict_from("groupoid", &groupoid);
    }
    if let Some(sel) = selection_names(g, &input.doc) {
        let resolved = SelectionSpec::from_names(cat.clone(), &sel);
        report.verdict_from("selection", &resolved);
    }
    report.lap("validate");
    Ok(report)
}

fn describe_filter_failure(ga: &GradedAlgebra, v: &graded_core::FilterViolation) -> String {
    let cat = ga.category();
    let w = ga.algebra().describe(&v.witness);
    match v.target {
        Some(st) => format!(
            "R_{} R_{} contains {w}, which is not in R_{}",
            cat.name(v.s),
            cat.name(v.t),
            cat.name(st)
        ),
        None => format!(
            "{} and {} are not composable but R_{} R_{} contains {w}",
            cat.name(v.s),
            cat.name(v.t),
            cat.name(v.s),
            cat.name(v.t)
        ),
    }
}

fn grading_checks(report: &mut Report, ga: &GradedAlgebra, fmt: Format) {
    let cat = ga.category();
    let alg = ga.algebra();
    match ga.check_filter() {
        Ok(()) => report.verdict("filter law", true, None),
        Err(v) => report.verdict("filter law", false, Some(describe_filter_failure(ga, &v))),
    }
    match ga.check_strong() {
        Ok(()) => report.verdict("strong", true, None),
        Err(v) => report.verdict(
            "strong",
            false,
            Some(format!(
                "R_{} R_{} has dimension {}, R_{} has dimension {}",
                cat.name(v.s),
                cat.name(v.t),
                v.product_dim,
                cat.name(v.expected),
                v.expected_dim
            )),
        ),
    }
    let local = ga.local_units();
    if report.verdict_from("locally unital", &local) {
        let units: Map<String, Value> = cat
            .object_ids()
            .map(|e| {
                (
                    cat.object_name(e).to_string(),
                    fmt.element(alg, local.as_ref().unwrap().unit(e)),
                )
            })
            .collect();
        report.set("local_units", Value::Object(units));
    }
    let unital = ga.check_unital();
    if report.verdict_from("unital", &unital) {
        report.set("identity", fmt.element(alg, &unital.unwrap().identity));
    }
}

pub fn build(g: &GlobalArgs) -> Outcome {
    let input = load(g)?;
    let cat = input.doc.category().map_err(|e| e.to_string())?;
    let mut report = Report::new("build", &input.source);
    let fmt = Format { support: g.support };
    let use_fixed =
        selection_names(g, &input.doc).is_none() && input.fixture.as_deref() == Some("monoid-counterexample");
    let ga = if use_fixed {
        report.set(
            "grading",
            json!("fixed components R_e = span{e33}, R_s = span{e11, e12, e21, e22} in M_3"),
        );
        monoid_counterexample()
    } else {
        let spec = spec_for(g, &input, &cat)?;
        report.set("selection", names(&cat, spec.selection()));
        match build_das(&spec) {
            Ok(b) => b.graded,
            Err(ConstructionError::Grading(GradingError::NotDirect { sum, total })) => {
                let overlap = PositionSets::new(&spec).overlap().map(|(a, b, (i, j))| {
                    format!("pair ({i}, {j}) lies in both X_{} and X_{}", cat.name(a), cat.name(b))
                });
                report.verdict(
                    "direct sum",
                    false,
                    Some(format!(
                        "component dimensions add to {sum} but span {total}{}",
                        overlap.map(|o| format!("; {o}")).unwrap_or_default()
                    )),
                );
                return Ok(report);
            }
            Err(e) => return Err(e.to_string()),
        }
    };
    report.lap("build");
    report.verdict("direct sum", true, None);
    let alg = ga.algebra();
    let components: Vec<Value> = cat
        .morphism_ids()
        .map(|s| {
            let c = ga.component(s);
            let mut m = Map::new();
            m.insert("morphism".into(), json!(cat.name(s)));
            m.insert("dim".into(), json!(c.dim()));
            if g.bases {
                m.insert("basis".into(), fmt.basis(alg, c));
            }
            Value::Object(m)
        })
        .collect();
    report.set("components", Value::Array(components));
    report.set("total_dim", json!(ga.total().dim()));
    grading_checks(&mut report, &ga, fmt);
    report.lap("checks");
    Ok(report)
}

/// The action, or a failed precondition verdict.
fn action(report: &mut Report, ga: &GradedAlgebra) -> Option<GradedAction> {
    match GradedAction::new(ga) {
        Ok(a) => {
            report.verdict("strong, locally unital grading", true, None);
            Some(a)
        }
        Err(e) => {
            report.verdict("strong, locally unital grading", false, Some(e.to_string()));
            None
        }
    }
}

fn theorem_section(
    report: &mut Report,
    act: &GradedAction,
    grp: &FiniteGroupoid,
    h: &Subgroupoid,
    generators: Option<&[MorphismId]>,
    fmt: Format,
) -> Result<Value, String> {
    let alg = act.graded().algebra();
    let single_object = grp.object_count() == 1;
    let check: TheoremCheck = if single_object {
        act.group_theorem(h.morphisms())
    } else {
        act.groupoid_theorem(h)
    }
    .map_err(|e| e.to_string())?;
    let label = format!("{}", h.display(grp));
    let mut m = Map::new();
    m.insert("subgroupoid".into(), names(grp, h.morphisms()));
    if let Some(gens) = generators {
        m.insert("generators".into(), names(grp, gens));
        let added: Vec<MorphismId> = h.morphisms().iter().copied().filter(|s| !gens.contains(s)).collect();
        m.insert("closure_added".into(), names(grp, &added));
    }
    m.insert(
        "theorem".into(),
        json!(if single_object { "group" } else { "groupoid" }),
    );
    m.insert("lhs".into(), fmt.subspace(alg, &check.lhs));
    m.insert("rhs".into(), fmt.subspace(alg, &check.rhs));
    m.insert("equal".into(), json!(check.holds()));
    if !check.holds() {
        m.insert("uncovered_dim".into(), json!(check.uncovered.dim()));
        m.insert(
            "equal_after_adding_uncovered".into(),
            json!(check.holds_with_uncovered()),
        );
    }
    let detail = (!check.holds()).then(|| {
        format!(
            "dim LHS {} vs dim RHS {}; components R_t with d(t) != c(t) and both ends outside ob(H) span {} dimensions",
            check.lhs.dim(),
            check.rhs.dim(),
            check.uncovered.dim()
        )
    });
    report.verdict(&format!("LHS = RHS for H = {label}"), check.holds(), detail);
    Ok(Value::Object(m))
}

pub fn commutant(g: &GlobalArgs, subgroupoid: Option<&str>, all: bool) -> Outcome {
    let input = load(g)?;
    let (grp, spec, ga) = groupoid_grading(g, &input)?;
    let mut report = Report::new("commutant", &input.source);
    report.set("selection", names(&grp, spec.selection()));
    let fmt = Format { support: g.support };
    let Some(act) = action(&mut report, &ga) else {
        return Ok(report);
    };
    report.lap("action");
    let mut sections = Vec::new();
    if all {
        let subs = grp
            .enumerate_subgroupoids(ENUMERATION_LIMIT)
            .map_err(|e| e.to_string())?;
        report.set("count", json!(subs.len()));
        for h in &subs {
            sections.push(theorem_section(&mut report, &act, &grp, h, None, fmt)?);
        }
    } else {
        let gens =
            resolve_names(grp.category(), &split_names(subgroupoid.unwrap_or_default())).map_err(|e| e.to_string())?;
        if gens.is_empty() {
            return Err("--subgroupoid needs at least one morphism name".into());
        }
        let h = grp.closure(gens.iter().copied());
        sections.push(theorem_section(&mut report, &act, &grp, &h, Some(&gens), fmt)?);
    }
    report.set("sections", Value::Array(sections));
    report.lap("theorem");
    Ok(report)
}

fn morphism(cat: &FiniteCategory, name: &str) -> Result<MorphismId, String> {
    cat.morphism_by_name(name.trim())
        .ok_or_else(|| format!("unknown morphism {name:?}"))
}

pub fn sigma(g: &GlobalArgs, name: &str) -> Outcome {
    let input = load(g)?;
    let (grp, spec, ga) = groupoid_grading(g, &input)?;
    let s = morphism(&grp, name)?;
    let mut report = Report::new("sigma", &input.source);
    report.set("selection", names(&grp, spec.selection()));
    report.set("morphism", json!(grp.name(s)));
    report.set("dom", json!(grp.object_name(grp.dom(s))));
    report.set("cod", json!(grp.object_name(grp.cod(s))));
    let fmt = Format { support: g.support };
    let Some(act) = action(&mut report, &ga) else {
        return Ok(report);
    };
    let alg = ga.algebra();
    let map = act.sigma(s);
    report.set("source", fmt.subspace(alg, map.source()));
    report.set("target", fmt.subspace(alg, map.target()));
    let table: Vec<Value> = map
        .source()
        .basis()
        .iter()
        .map(|c| {
            let image = map.apply(c).expect("basis vector lies in the source");
            json!({ "element": fmt.element(alg, c), "image": fmt.element(alg, &image) })
        })
        .collect();
    report.set("table", Value::Array(table));
    report.verdict("bijective onto target", map.inverse().is_some(), None);
    if grp.is_identity(s) {
        report.verdict("identity morphism acts trivially", map.is_identity(), None);
    }
    report.lap("sigma");
    Ok(report)
}

pub fn nonfree(g: &GlobalArgs, name: &str) -> Outcome {
    let input = load(g)?;
    let grp = groupoid_of(&input)?;
    let t = morphism(&grp, name)?;
    let mut report = Report::new("nonfree", &input.source);
    report.set("morphism", json!(grp.name(t)));
    let out = match nonfree_example(&grp, t) {
        Ok(out) => out,
        Err(e @ ConstructionError::IdentityMorphism(_)) => return Err(e.to_string()),
        Err(e) => {
            report.verdict("construction", false, Some(e.to_string()));
            return Ok(report);
        }
    };
    report.lap("construction");
    let ga = &out.build.graded;
    report.set("selection", names(&grp, out.build.spec.selection()));
    let dims: Map<String, Value> = grp
        .morphism_ids()
        .map(|s| (grp.name(s).to_string(), json!(ga.component(s).dim())))
        .collect();
    report.set("component_dims", Value::Object(dims));
    let c = &out.certificate;
    report.set(
        "certificate",
        json!({
            "morphism": grp.name(c.t),
            "unit_object": grp.object_name(grp.cod(c.t)),
            "m": c.m,
            "dim_unit": c.dim_unit,
            "dim_t": c.dim_t,
        }),
    );
    let fmt = Format { support: g.support };
    grading_checks(&mut report, ga, fmt);
    let zero: Vec<&str> = grp
        .morphism_ids()
        .filter(|&s| ga.component(s).is_zero())
        .map(|s| grp.name(s))
        .collect();
    report.verdict(
        "all components nonzero",
        zero.is_empty(),
        (!zero.is_empty()).then(|| format!("zero components: {}", zero.join(", "))),
    );
    let recheck = nonfree_check(ga, t);
    report.verdict(
        "0 < dim R_t < dim R_c(t)",
        matches!(recheck, NonfreeVerdict::Certificate(ref r) if r == c),
        None,
    );
    report.lap("verification");
    Ok(report)
}

pub fn subgroupoids(g: &GlobalArgs) -> Outcome {
    let input = load(g)?;
    let grp = groupoid_of(&input)?;
    let subs = grp
        .enumerate_subgroupoids(ENUMERATION_LIMIT)
        .map_err(|e| e.to_string())?;
    let mut report = Report::new("subgroupoids", &input.source);
    report.set("count", json!(subs.len()));
    let list: Vec<Value> = subs
        .iter()
        .map(|h| {
            let objects: Vec<&str> = h.objects(&grp).into_iter().map(|e| grp.object_name(e)).collect();
            json!({ "morphisms": names(&grp, h.morphisms()), "objects": objects })
        })
        .collect();
    report.set("subgroupoids", Value::Array(list));
    report.verdict(
        "every entry is closed",
        subs.iter().all(|h| grp.is_subgroupoid(h.morphisms())),
        None,
    );
    report.lap("enumerate");
    Ok(report)
}
