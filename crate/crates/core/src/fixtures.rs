//! Built-in categories: the worked examples plus small generators (cyclic
//! groups, pair groupoids, disjoint unions) used by tests and the CLI.

use std::collections::BTreeMap;

use crate::doc::GroupoidDoc;
use crate::groupoid::{validate_category, CategoryDescription, FiniteCategory, FiniteGroupoid, MorphismDecl};

/// Names accepted by `--fixture`.
pub const FIXTURE_NAMES: [&str; 3] = ["z4", "two-object", "monoid-counterexample"];

fn decl(name: &str, dom: &str, cod: &str) -> MorphismDecl {
    MorphismDecl {
        name: name.to_string(),
        dom: dom.to_string(),
        cod: cod.to_string(),
    }
}

fn triple(s: &str, t: &str, st: &str) -> [String; 3] {
    [s.to_string(), t.to_string(), st.to_string()]
}

/// Adds `s·id = s` and `id·s = s` for every morphism.
fn with_identity_composites(mut desc: CategoryDescription) -> CategoryDescription {
    let identity_of = |obj: &str| desc.identities.get(obj).cloned().unwrap_or_else(|| obj.to_string());
    let mut extra = Vec::new();
    for m in &desc.morphisms {
        let (right, left) = (identity_of(&m.dom), identity_of(&m.cod));
        extra.push(triple(&m.name, &right, &m.name));
        if left != m.name {
            extra.push(triple(&left, &m.name, &m.name));
        }
    }
    extra.retain(|t| !desc.compose.iter().any(|c| c[0] == t[0] && c[1] == t[1]));
    desc.compose.extend(extra);
    desc
}

fn groupoid(desc: &CategoryDescription) -> FiniteGroupoid {
    validate_category(desc)
        .and_then(|c| c.as_groupoid())
        .expect("built-in fixture is a groupoid")
}

/// Two objects `e`, `f`; loops `alpha` at `e`, `beta` at `f`; `u0, u1: f -> e`
/// and `t0, t1: e -> f`. Morphism order: e, alpha, t0, t1, f, beta, u0, u1.
pub fn two_object_description() -> CategoryDescription {
    let relations = [
        ("alpha", "alpha", "e"),
        ("alpha", "u0", "u1"),
        ("alpha", "u1", "u0"),
        ("u0", "beta", "u1"),
        ("u1", "beta", "u0"),
        ("beta", "beta", "f"),
        ("beta", "t0", "t1"),
        ("beta", "t1", "t0"),
        ("t0", "alpha", "t1"),
        ("t1", "alpha", "t0"),
        ("u0", "t0", "e"),
        ("u1", "t0", "alpha"),
        ("u0", "t1", "alpha"),
        ("u1", "t1", "e"),
        ("t0", "u0", "f"),
        ("t0", "u1", "beta"),
        ("t1", "u0", "beta"),
        ("t1", "u1", "f"),
    ];
    with_identity_composites(CategoryDescription {
        objects: vec!["e".into(), "f".into()],
        morphisms: vec![
            decl("e", "e", "e"),
            decl("alpha", "e", "e"),
            decl("t0", "e", "f"),
            decl("t1", "e", "f"),
            decl("f", "f", "f"),
            decl("beta", "f", "f"),
            decl("u0", "f", "e"),
            decl("u1", "f", "e"),
        ],
        identities: BTreeMap::new(),
        compose: relations.iter().map(|(s, t, st)| triple(s, t, st)).collect(),
    })
}

pub fn two_object_groupoid() -> FiniteGroupoid {
    groupoid(&two_object_description())
}

/// Selection `(f, beta, u0, u1, t0, t1, alpha, e, e)`.
pub fn two_object_selection() -> Vec<String> {
    ["f", "beta", "u0", "u1", "t0", "t1", "alpha", "e", "e"]
        .map(String::from)
        .to_vec()
}

/// One-object groupoid from a group operation on `0..order`, element 0 the
/// identity, elements named by `name`.
pub fn group_description(
    order: usize,
    op: impl Fn(usize, usize) -> usize,
    name: impl Fn(usize) -> String,
) -> CategoryDescription {
    let mut compose = Vec::new();
    for a in 0..order {
        for b in 0..order {
            compose.push([name(a), name(b), name(op(a, b))]);
        }
    }
    CategoryDescription {
        objects: vec!["*".into()],
        morphisms: (0..order).map(|a| decl(&name(a), "*", "*")).collect(),
        identities: BTreeMap::from([("*".to_string(), name(0))]),
        compose,
    }
}

pub fn cyclic_description(order: usize) -> CategoryDescription {
    group_description(order, |a, b| (a + b) % order, |a| a.to_string())
}

/// `Z_n` as a one-object groupoid with morphisms named `0..n-1`.
pub fn cyclic_group(order: usize) -> FiniteGroupoid {
    groupoid(&cyclic_description(order))
}

pub fn klein_four() -> FiniteGroupoid {
    groupoid(&group_description(
        4,
        |a, b| a ^ b,
        |a| ["e", "a", "b", "c"][a].to_string(),
    ))
}

/// Symmetric group on three letters; element `i` is the `i`-th permutation
/// of `[0, 1, 2]` in lexicographic order.
pub fn symmetric_group_3() -> FiniteGroupoid {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| PERMS.iter().position(|q| *q == p).unwrap();
    let op = |a: usize, b: usize| {
        let (p, q) = (PERMS[a], PERMS[b]);
        index([p[q[0]], p[q[1]], p[q[2]]])
    };
    groupoid(&group_description(6, op, |a| format!("p{a}")))
}

/// Connected groupoid on `objects` objects with vertex group `group`
/// (a one-object groupoid): morphisms `i <- j` labelled by group elements,
/// composing as `(i, j, g)(j, k, h) = (i, k, gh)`.
pub fn connected_groupoid(objects: usize, group: &FiniteGroupoid) -> FiniteGroupoid {
    let elems: Vec<_> = group.morphism_ids().collect();
    let id = group.identity(group.object_ids().next().expect("group has an object"));
    let obj = |i: usize| format!("o{i}");
    let name = |i: usize, j: usize, g: usize| {
        if i == j && elems[g] == id {
            obj(i)
        } else {
            format!("{}:{}<-{}", group.name(elems[g]), i, j)
        }
    };
    let mut morphisms = Vec::new();
    let mut compose = Vec::new();
    for i in 0..objects {
        for j in 0..objects {
            for g in 0..elems.len() {
                morphisms.push(decl(&name(i, j, g), &obj(j), &obj(i)));
                for k in 0..objects {
                    for h in 0..elems.len() {
                        let gh = group.compose(elems[g], elems[h]).expect("group composes");
                        compose.push([name(i, j, g), name(j, k, h), name(i, k, gh.index())]);
                    }
                }
            }
        }
    }
    groupoid(&CategoryDescription {
        objects: (0..objects).map(obj).collect(),
        morphisms,
        identities: BTreeMap::new(),
        compose,
    })
}

/// Disjoint union; names get a `c{k}.` prefix per summand.
pub fn disjoint_union(parts: &[FiniteGroupoid]) -> FiniteGroupoid {
    let mut desc = CategoryDescription::default();
    for (k, part) in parts.iter().enumerate() {
        let p = |s: &str| format!("c{k}.{s}");
        let d = part.to_description();
        desc.objects.extend(d.objects.iter().map(|o| p(o)));
        desc.morphisms
            .extend(d.morphisms.iter().map(|m| decl(&p(&m.name), &p(&m.dom), &p(&m.cod))));
        for e in part.object_ids() {
            desc.identities
                .insert(p(part.object_name(e)), p(part.name(part.identity(e))));
        }
        desc.compose
            .extend(d.compose.iter().map(|[s, t, st]| [p(s), p(t), p(st)]));
    }
    groupoid(&desc)
}

/// `{id_e, id_f, t: f -> e, tinv: e -> f}`.
pub fn invertible_arrow() -> FiniteGroupoid {
    groupoid(&with_identity_composites(CategoryDescription {
        objects: vec!["e".into(), "f".into()],
        morphisms: vec![
            decl("e", "e", "e"),
            decl("f", "f", "f"),
            decl("t", "f", "e"),
            decl("tinv", "e", "f"),
        ],
        identities: BTreeMap::new(),
        compose: vec![triple("t", "tinv", "e"), triple("tinv", "t", "f")],
    }))
}

/// Free arrow `a: e -> f` with its two identities (cancellative, not a groupoid).
pub fn arrow_category() -> FiniteCategory {
    validate_category(&with_identity_composites(CategoryDescription {
        objects: vec!["e".into(), "f".into()],
        morphisms: vec![decl("e", "e", "e"), decl("f", "f", "f"), decl("a", "e", "f")],
        identities: BTreeMap::new(),
        compose: Vec::new(),
    }))
    .expect("arrow category is valid")
}

/// The monoid `{e, s}` with `e² = e`, `s² = s`, `es = se = s`.
pub fn idempotent_monoid_description() -> CategoryDescription {
    CategoryDescription {
        objects: vec!["*".into()],
        morphisms: vec![decl("e", "*", "*"), decl("s", "*", "*")],
        identities: BTreeMap::from([("*".to_string(), "e".to_string())]),
        compose: vec![
            triple("e", "e", "e"),
            triple("s", "s", "s"),
            triple("e", "s", "s"),
            triple("s", "e", "s"),
        ],
    }
}

pub fn idempotent_monoid() -> FiniteCategory {
    validate_category(&idempotent_monoid_description()).expect("monoid is a category")
}

/// The input document behind a `--fixture` name.
pub fn doc(name: &str) -> Option<GroupoidDoc> {
    let (category, selection) = match name {
        "z4" => (
            cyclic_description(4),
            Some(["0", "1", "2", "3", "3"].map(String::from).to_vec()),
        ),
        "two-object" => (two_object_description(), Some(two_object_selection())),
        "monoid-counterexample" => (idempotent_monoid_description(), None),
        _ => return None,
    };
    Some(GroupoidDoc {
        category,
        inverse: None,
        selection,
    })
}
