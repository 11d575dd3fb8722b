//! The `group@action` specification grammar and its realization.
//!
//! Groups:
//!   `sym:N`, `alt:N`, `cyclic:N`, `dihedral:2N`,
//!   `wreath-product:<inner>:<outer>` (inner/outer from the first four),
//!   `perm:N:<generators in disjoint-cycle notation, comma-separated>`,
//!   `gl:N:Q`, `sl:N:Q`, `pgl:N:Q`, `psl:N:Q`, `sp:N:Q`.
//!
//! Actions (appended with `@`):
//!   permutation groups: `natural`, `ksets:K`, `tuples:K`,
//!   `cosets:<generators>`, `regular`; wreath products additionally
//!   `product`; matrix groups: `projective`, `vectors`, `subspaces:K`,
//!   `forms:minus`.
//!
//! Cycle notation is 1-indexed; generators are separated by commas between a
//! closing and an opening parenthesis, so `(1,2)(3,5),(1,2,3)` is two
//! generators, the first a double transposition.

use crate::action::{realize_perm, wreath_imprimitive, wreath_product_action, PermAction, PermTarget};
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::group::{alt, cyclic, dihedral, sym, PermGroup};
use crate::matrix::{act_on, build_classical, MatrixAction, MatrixKind, MatrixTarget};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Cyclic(usize),
    Dihedral(usize),
    Wreath(Box<GroupSpec>, Box<GroupSpec>),
    /// Explicit generators in cycle notation over `{1..degree}`.
    Perm { degree: usize, gens: Vec<String> },
    Gl { n: usize, q: u64 },
    Sl { n: usize, q: u64 },
    Pgl { n: usize, q: u64 },
    Psl { n: usize, q: u64 },
    Sp { n: usize, q: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionSpec {
    Natural,
    KSets(usize),
    KTuples(usize),
    Cosets(Vec<String>),
    Regular,
    Product,
    Projective,
    Vectors,
    Subspaces(usize),
    FormsMinus,
}

/// Parses `group@action`; a missing action defaults to `natural`.
pub fn parse_spec(text: &str) -> Result<(GroupSpec, ActionSpec)> {
    let text = text.trim();
    let (group_text, action_text) = match text.split_once('@') {
        Some((g, a)) => (g, Some(a)),
        None => (text, None),
    };
    let group = parse_group(group_text)?;
    let action = match action_text {
        None => ActionSpec::Natural,
        Some(a) => parse_action(a)?,
    };
    Ok((group, action))
}

fn parse_usize(s: &str, what: &str) -> Result<usize> {
    s.parse::<usize>()
        .map_err(|_| Error::Parse(format!("{what}: expected an integer, found {s:?}")))
}

fn parse_group(text: &str) -> Result<GroupSpec> {
    let (head, rest) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("group spec {text:?} needs a ':'")))?;
    match head {
        "sym" => Ok(GroupSpec::Sym(parse_usize(rest, "sym degree")?)),
        "alt" => Ok(GroupSpec::Alt(parse_usize(rest, "alt degree")?)),
        "cyclic" => Ok(GroupSpec::Cyclic(parse_usize(rest, "cyclic order")?)),
        "dihedral" => Ok(GroupSpec::Dihedral(parse_usize(rest, "dihedral order")?)),
        "wreath-product" => {
            // inner and outer are simple `head:N` forms.
            let parts: Vec<&str> = rest.split(':').collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!(
                    "wreath-product needs inner:N:outer:N, found {rest:?}"
                )));
            }
            let inner = parse_group(&format!("{}:{}", parts[0], parts[1]))?;
            let outer = parse_group(&format!("{}:{}", parts[2], parts[3]))?;
            for g in [&inner, &outer] {
                if !matches!(
                    g,
                    GroupSpec::Sym(_) | GroupSpec::Alt(_) | GroupSpec::Cyclic(_) | GroupSpec::Dihedral(_)
                ) {
                    return Err(Error::Parse(
                        "wreath-product factors must be sym/alt/cyclic/dihedral".into(),
                    ));
                }
            }
            Ok(GroupSpec::Wreath(Box::new(inner), Box::new(outer)))
        }
        "perm" => {
            let (deg_text, gens_text) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse("perm:N:<gens> needs generators".into()))?;
            let degree = parse_usize(deg_text, "perm degree")?;
            let gens = split_generator_list(gens_text)?;
            if gens.is_empty() {
                return Err(Error::Parse("perm spec needs at least one generator".into()));
            }
            Ok(GroupSpec::Perm { degree, gens })
        }
        "gl" | "sl" | "pgl" | "psl" | "sp" => {
            let (n_text, q_text) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("{head}:N:Q needs a field size")))?;
            let n = parse_usize(n_text, "matrix dimension")?;
            let q = q_text
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("field size: found {q_text:?}")))?;
            Ok(match head {
                "gl" => GroupSpec::Gl { n, q },
                "sl" => GroupSpec::Sl { n, q },
                "pgl" => GroupSpec::Pgl { n, q },
                "psl" => GroupSpec::Psl { n, q },
                _ => GroupSpec::Sp { n, q },
            })
        }
        _ => Err(Error::Parse(format!("unknown group kind {head:?}"))),
    }
}

fn parse_action(text: &str) -> Result<ActionSpec> {
    if let Some((head, rest)) = text.split_once(':') {
        return match head {
            "ksets" => Ok(ActionSpec::KSets(parse_usize(rest, "ksets size")?)),
            "tuples" => Ok(ActionSpec::KTuples(parse_usize(rest, "tuples size")?)),
            "cosets" => Ok(ActionSpec::Cosets(split_generator_list(rest)?)),
            "subspaces" => Ok(ActionSpec::Subspaces(parse_usize(rest, "subspace dim")?)),
            "forms" if rest == "minus" => Ok(ActionSpec::FormsMinus),
            _ => Err(Error::Parse(format!("unknown action {text:?}"))),
        };
    }
    match text {
        "natural" => Ok(ActionSpec::Natural),
        "regular" => Ok(ActionSpec::Regular),
        "product" => Ok(ActionSpec::Product),
        "projective" => Ok(ActionSpec::Projective),
        "vectors" => Ok(ActionSpec::Vectors),
        _ => Err(Error::Parse(format!("unknown action {text:?}"))),
    }
}

/// Splits a comma-separated list of cycle-notation permutations: commas
/// inside parentheses separate points, commas between `)` and `(` separate
/// generators.
pub fn split_generator_list(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse("unbalanced ')' in generator list".into()));
                }
                cur.push(ch);
            }
            ',' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced '(' in generator list".into()));
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    Ok(out)
}

/// Canonical printer; `parse_spec(print_spec(parse_spec(s))) = parse_spec(s)`.
pub fn print_spec(group: &GroupSpec, action: &ActionSpec) -> String {
    format!("{}@{}", print_group(group), print_action(action))
}

fn print_group(g: &GroupSpec) -> String {
    match g {
        GroupSpec::Sym(n) => format!("sym:{n}"),
        GroupSpec::Alt(n) => format!("alt:{n}"),
        GroupSpec::Cyclic(n) => format!("cyclic:{n}"),
        GroupSpec::Dihedral(n) => format!("dihedral:{n}"),
        GroupSpec::Wreath(i, o) => {
            format!("wreath-product:{}:{}", print_group(i), print_group(o))
        }
        GroupSpec::Perm { degree, gens } => format!("perm:{}:{}", degree, gens.join(",")),
        GroupSpec::Gl { n, q } => format!("gl:{n}:{q}"),
        GroupSpec::Sl { n, q } => format!("sl:{n}:{q}"),
        GroupSpec::Pgl { n, q } => format!("pgl:{n}:{q}"),
        GroupSpec::Psl { n, q } => format!("psl:{n}:{q}"),
        GroupSpec::Sp { n, q } => format!("sp:{n}:{q}"),
    }
}

fn print_action(a: &ActionSpec) -> String {
    match a {
        ActionSpec::Natural => "natural".into(),
        ActionSpec::KSets(k) => format!("ksets:{k}"),
        ActionSpec::KTuples(k) => format!("tuples:{k}"),
        ActionSpec::Cosets(gens) => format!("cosets:{}", gens.join(",")),
        ActionSpec::Regular => "regular".into(),
        ActionSpec::Product => "product".into(),
        ActionSpec::Projective => "projective".into(),
        ActionSpec::Vectors => "vectors".into(),
        ActionSpec::Subspaces(k) => format!("subspaces:{k}"),
        ActionSpec::FormsMinus => "forms:minus".into(),
    }
}

/// A realized specification: the induced permutation group with labels and,
/// where meaningful, the source-element mapper and the field size.
pub struct Realization {
    pub name: String,
    pub group: PermGroup,
    pub labels: Vec<String>,
    /// False only for the vectors action, which keeps the zero vector.
    pub transitive: bool,
    /// Field size for matrix-built actions.
    pub q: Option<u64>,
    pub mapper: Mapper,
}

pub enum Mapper {
    Perm(Box<PermAction>),
    Matrix(Box<MatrixAction>),
}

impl Realization {
    pub fn degree(&self) -> usize {
        self.group.degree()
    }
}

/// Builds the underlying plain permutation group for a non-matrix spec.
fn build_perm_group(spec: &GroupSpec, cfg: &RunConfig) -> Result<PermGroup> {
    match spec {
        GroupSpec::Sym(n) => Ok(sym(*n)),
        GroupSpec::Alt(n) => Ok(alt(*n)),
        GroupSpec::Cyclic(n) => Ok(cyclic(*n)),
        GroupSpec::Dihedral(n) => dihedral(*n),
        GroupSpec::Perm { degree, gens } => {
            let parsed: Result<Vec<Permutation>> = gens
                .iter()
                .map(|s| Permutation::from_cycles_str(s, *degree))
                .collect();
            PermGroup::with_seed(*degree, parsed?, cfg.substream("chain"))
        }
        GroupSpec::Wreath(_, _) => Err(Error::Parse(
            "wreath products are realized through their actions".into(),
        )),
        _ => Err(Error::Parse("matrix groups have no natural point set".into())),
    }
}

/// Parses and realizes in one step.
pub fn realize_spec_text(text: &str, cfg: &RunConfig) -> Result<Realization> {
    let (group, action) = parse_spec(text)?;
    realize_spec(&group, &action, cfg)
}

pub fn realize_spec(group: &GroupSpec, action: &ActionSpec, cfg: &RunConfig) -> Result<Realization> {
    let name = print_spec(group, action);
    let seed = cfg.substream("chain");
    match group {
        GroupSpec::Wreath(inner, outer) => {
            let ig = build_perm_group(inner, cfg)?;
            let og = build_perm_group(outer, cfg)?;
            let g = match action {
                ActionSpec::Natural => wreath_imprimitive(&ig, &og)?,
                ActionSpec::Product => wreath_product_action(&ig, &og, cfg.degree_cap)?,
                _ => {
                    return Err(Error::Unsupported(format!(
                        "action {} is not defined for wreath products",
                        print_action(action)
                    )))
                }
            };
            let labels = (1..=g.degree()).map(|i| i.to_string()).collect();
            let (act, g2) = realize_perm(&g, &PermTarget::Natural, cfg.degree_cap, seed)?;
            let _ = g2;
            Ok(Realization {
                name,
                group: g,
                labels,
                transitive: true,
                q: None,
                mapper: Mapper::Perm(Box::new(act)),
            })
        }
        GroupSpec::Gl { .. }
        | GroupSpec::Sl { .. }
        | GroupSpec::Pgl { .. }
        | GroupSpec::Psl { .. }
        | GroupSpec::Sp { .. } => {
            let (kind, n, q, projective_quotient) = match group {
                GroupSpec::Gl { n, q } => (MatrixKind::Gl, *n, *q, false),
                GroupSpec::Sl { n, q } => (MatrixKind::Sl, *n, *q, false),
                GroupSpec::Pgl { n, q } => (MatrixKind::Gl, *n, *q, true),
                GroupSpec::Psl { n, q } => (MatrixKind::Sl, *n, *q, true),
                GroupSpec::Sp { n, q } => (MatrixKind::Sp, *n, *q, false),
                _ => unreachable!(),
            };
            let target = match action {
                ActionSpec::Projective => MatrixTarget::ProjectivePoints,
                ActionSpec::Vectors => MatrixTarget::Vectors,
                ActionSpec::Subspaces(k) => MatrixTarget::KSubspaces(*k),
                ActionSpec::FormsMinus => MatrixTarget::FormsMinus,
                _ => {
                    return Err(Error::Unsupported(format!(
                        "action {} is not defined for matrix groups",
                        print_action(action)
                    )))
                }
            };
            if projective_quotient
                && matches!(target, MatrixTarget::Vectors | MatrixTarget::FormsMinus)
            {
                return Err(Error::Unsupported(
                    "projective groups act on subspaces, not vectors or forms".into(),
                ));
            }
            let mg = build_classical(kind, n, q)?;
            let (act, g) = act_on(&mg, target, cfg.degree_cap, seed)?;
            let transitive = !matches!(action, ActionSpec::Vectors);
            Ok(Realization {
                name,
                labels: act.labels.clone(),
                transitive,
                q: Some(q),
                mapper: Mapper::Matrix(Box::new(act)),
                group: g,
            })
        }
        _ => {
            let g = build_perm_group(group, cfg)?;
            let target = match action {
                ActionSpec::Natural => PermTarget::Natural,
                ActionSpec::KSets(k) => PermTarget::KSets(*k),
                ActionSpec::KTuples(k) => PermTarget::KTuples(*k),
                ActionSpec::Regular => PermTarget::Regular,
                ActionSpec::Cosets(gens) => {
                    let parsed: Result<Vec<Permutation>> = gens
                        .iter()
                        .map(|s| Permutation::from_cycles_str(s, g.degree()))
                        .collect();
                    PermTarget::CosetsOf(parsed?)
                }
                _ => {
                    return Err(Error::Unsupported(format!(
                        "action {} is not defined for permutation groups",
                        print_action(action)
                    )))
                }
            };
            let (act, induced) = realize_perm(&g, &target, cfg.degree_cap, seed)?;
            Ok(Realization {
                name,
                labels: act.labels.clone(),
                transitive: true,
                q: None,
                mapper: Mapper::Perm(Box::new(act)),
                group: induced,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn parse_and_realize_ksets() {
        let r = realize_spec_text("sym:5@ksets:2", &cfg()).unwrap();
        assert_eq!(r.degree(), 10);
        assert_eq!(r.group.order(), BigUint::from(120u32));
    }

    #[test]
    fn parse_and_realize_projective() {
        let r = realize_spec_text("psl:2:23@projective", &cfg()).unwrap();
        assert_eq!(r.degree(), 24);
        assert_eq!(r.group.order(), BigUint::from(6072u32));
    }

    #[test]
    fn parse_perm_with_cosets() {
        let r = realize_spec_text("perm:5:(1,2,3,4,5),(1,2)(3,5)@natural", &cfg()).unwrap();
        assert_eq!(r.group.order(), BigUint::from(10u32));
    }

    #[test]
    fn alt5_cosets_of_d10() {
        let r = realize_spec_text("alt:5@cosets:(1,2,3,4,5),(1,2)(3,5)", &cfg()).unwrap();
        assert_eq!(r.degree(), 6);
        assert_eq!(r.group.order(), BigUint::from(60u32));
    }

    #[test]
    fn wreath_product_realization() {
        let r = realize_spec_text("wreath-product:sym:3:sym:2@product", &cfg()).unwrap();
        assert_eq!(r.degree(), 9);
        assert_eq!(r.group.order(), BigUint::from(72u32));
    }

    #[test]
    fn roundtrip_through_printer() {
        for s in [
            "sym:5@ksets:2",
            "psl:2:23@projective",
            "perm:5:(1,2,3,4,5),(1,2)(3,5)@natural",
            "wreath-product:sym:3:sym:2@product",
            "alt:5@cosets:(1,2,3,4,5),(1,2)(3,5)",
            "gl:2:3@vectors",
            "sp:6:2@forms:minus",
            "cyclic:6@regular",
            "sym:6@tuples:2",
        ] {
            let (g, a) = parse_spec(s).unwrap();
            let printed = print_spec(&g, &a);
            let (g2, a2) = parse_spec(&printed).unwrap();
            assert_eq!((g, a), (g2, a2), "roundtrip of {s}");
        }
    }

    #[test]
    fn semantic_errors() {
        assert!(matches!(
            realize_spec_text("sym:5@ksets:5", &cfg()),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            realize_spec_text("nonsense:5", &cfg()),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            realize_spec_text("pgl:2:3@vectors", &cfg()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn default_action_is_natural() {
        let (g, a) = parse_spec("sym:4").unwrap();
        assert_eq!(g, GroupSpec::Sym(4));
        assert_eq!(a, ActionSpec::Natural);
    }
}
