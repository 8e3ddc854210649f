//! Command definitions and dispatch.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use cohinv_core::embed::{can_embed, EmbeddingCase, FiniteGroup, MembershipFacts, NamedElement};
use cohinv_core::field::{FieldDesc, SquareClass};
use cohinv_core::groups::{
    ed_lower_bound_witness, eval_invariant, replay_pro_proof, t_map, tits_construct, AlbertDesc,
    BasisTag, E8Desc, OctonionDesc, QuaternionDesc, Spin16Desc,
};
use cohinv_core::milnor::CohClass;
use cohinv_core::pfister::divides;
use cohinv_core::rootsys::{
    center_pairing, kernel_quotient_order, mu2_kernel_generators, sl2_center_cocharacter,
    sl2_quadruple, verify_klein_map, verify_sl2_quadruple, WeightVector,
};
use serde_json::{json, Value};

use crate::parse::{
    coerce_degree, parse_expression, parse_field_desc, parse_mod3, parse_pfister,
    parse_square_class_pair, split_top_level_product,
};
use crate::render;

#[derive(Parser, Debug)]
#[command(
    name = "cohinv",
    version,
    about = "Symbolic mod-2 cohomological invariants: classes, residues, torsor models, and batch checks",
    after_help = "Machine-readable JSON is always written to stdout; a human summary goes to \
                  stderr unless --json is given.  Exit code: 0 when all requested checks pass, \
                  1 when a check fails, 2 on errors."
)]
pub struct Cli {
    /// Machine mode: suppress the human-readable summary on stderr.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normalize a class expression.
    Normalize {
        #[arg(long)]
        field: String,
        #[arg(long)]
        expr: String,
    },
    /// Split a class at the valuation of one indeterminate.
    Residue {
        #[arg(long)]
        field: String,
        #[arg(long)]
        var: String,
        #[arg(long)]
        expr: String,
    },
    /// Cup product of two expressions.
    Cup {
        #[arg(long)]
        field: String,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Decide whether a class vanishes.
    Iszero {
        #[arg(long)]
        field: String,
        #[arg(long)]
        expr: String,
    },
    /// Inspect a (scaled) Pfister form; optionally verify a divisibility.
    Pfister {
        #[arg(long)]
        field: String,
        /// `pf<<a,b,c>>` or `<alpha>*pf<<...>>`.
        #[arg(long)]
        form: String,
        /// A larger form the given one should divide.
        #[arg(long, requires = "complement")]
        divides: Option<String>,
        /// The exhibited complement for the divisibility.
        #[arg(long, requires = "divides")]
        complement: Option<String>,
    },
    /// Build an Albert descriptor and report its derived invariants.
    Albert {
        #[arg(long)]
        field: String,
        #[arg(long)]
        f3: String,
        #[arg(long)]
        f5: String,
        #[arg(long)]
        g3: String,
        /// Witness pair `c,d` with f5 = f3 * (c, d); inferred from a
        /// product-shaped --f5 when omitted.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Two-algebra construction from an octonion and an Albert descriptor.
    Tits {
        #[arg(long)]
        field: String,
        /// f3 of the octonion algebra.
        #[arg(long)]
        oct_f3: String,
        #[arg(long)]
        f3: String,
        #[arg(long)]
        f5: String,
        #[arg(long)]
        g3: String,
        #[arg(long)]
        witness: Option<String>,
    },
    /// The section t: pair an Albert descriptor with its matched octonion.
    Tmap {
        #[arg(long)]
        field: String,
        #[arg(long)]
        f3: String,
        #[arg(long)]
        f5: String,
        #[arg(long)]
        g3: String,
        #[arg(long)]
        witness: Option<String>,
    },
    /// Splitness analysis of an abstract descriptor.
    Status {
        #[arg(long)]
        field: String,
        #[arg(long)]
        rost2: String,
        #[arg(long)]
        rost3: String,
        #[arg(long)]
        u: Option<String>,
    },
    /// Invariants of a Rost-trivial Spin16 torsor.
    Spin16 {
        #[arg(long)]
        field: String,
        /// Klein presentation: `zeta_v,zeta_h`.
        #[arg(long, requires = "q1", requires = "q2", conflicts_with = "q")]
        zeta: Option<String>,
        /// First quaternion `a,b`.
        #[arg(long)]
        q1: Option<String>,
        /// Second quaternion `a,b`.
        #[arg(long)]
        q2: Option<String>,
        /// Direct presentation: `<alpha>*pf<<a,b,c,d>>`.
        #[arg(long)]
        q: Option<String>,
    },
    /// Evaluate a module combination of the Spin16 basis invariants.
    BasisEval {
        #[arg(long)]
        field: String,
        #[arg(long)]
        zeta: String,
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
        /// `tag=expr` with tag one of 1, f4, f5, u5, u6; repeatable.
        /// Coefficients are parsed over the indeterminate-free base.
        #[arg(long = "term")]
        terms: Vec<String>,
    },
    /// Replay the determination of the degree-5 invariant's coefficients.
    ProvePro,
    /// The essential-dimension lower-bound witness.
    EdWitness,
    /// Root-lattice verifications; with no flags, run all of them.
    Rootcheck {
        #[arg(long)]
        quadruple: bool,
        #[arg(long)]
        kernel: bool,
        #[arg(long)]
        center: bool,
        #[arg(long)]
        klein: bool,
    },
    /// Finite-subgroup embedding criteria.
    Embed {
        /// One of G2F2, PSL2_8, PSL2_13, PGL2_31, SL2_32, Alt4, Alt5.
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        /// Comma-separated declared facts, e.g. `sqrt13,zeta9_real`.
        #[arg(long)]
        facts: Option<String>,
    },
    /// Run the bundled reproduction corpus.
    Corpus {
        /// Directory with corpus .json files (overrides COHINV_CORPUS_DIR).
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Normalize { .. } => "normalize",
            Command::Residue { .. } => "residue",
            Command::Cup { .. } => "cup",
            Command::Iszero { .. } => "iszero",
            Command::Pfister { .. } => "pfister",
            Command::Albert { .. } => "albert",
            Command::Tits { .. } => "tits",
            Command::Tmap { .. } => "tmap",
            Command::Status { .. } => "status",
            Command::Spin16 { .. } => "spin16",
            Command::BasisEval { .. } => "basis-eval",
            Command::ProvePro => "prove-pro",
            Command::EdWitness => "ed-witness",
            Command::Rootcheck { .. } => "rootcheck",
            Command::Embed { .. } => "embed",
            Command::Corpus { .. } => "corpus",
        }
    }
}

/// Result of executing one command: the JSON payload, whether all requested
/// checks passed, and a short human summary.
pub struct Outcome {
    pub result: Value,
    pub checks_pass: bool,
    pub human: String,
}

fn ok(result: Value, human: String) -> Outcome {
    Outcome {
        result,
        checks_pass: true,
        human,
    }
}

fn field_of(text: &str) -> Result<FieldDesc> {
    Ok(parse_field_desc(text)?)
}

fn albert_from_args(
    field: &FieldDesc,
    f3: &str,
    f5: &str,
    g3: &str,
    witness: &Option<String>,
) -> Result<AlbertDesc> {
    let f3_class = coerce_degree(parse_expression(f3, field)?, 3)?;
    let f5_class = coerce_degree(parse_expression(f5, field)?, 5)?;
    let g3_class = parse_mod3(g3, field, 3)?;
    let witness_pair: Option<(SquareClass, SquareClass)> = match witness {
        Some(w) => Some(parse_square_class_pair(w, field)?),
        None if f5_class.is_zero() => None,
        None => infer_witness(field, &f3_class, f5)
            .map(Some)
            .ok_or_else(|| {
                anyhow!(
                    "f5 is nonzero: pass --witness c,d with f5 = f3 * (c, d) \
                 (it could not be inferred from the shape of --f5)"
                )
            })?,
    };
    Ok(AlbertDesc::new(f3_class, f5_class, g3_class, witness_pair)?)
}

/// Infers a divisibility witness from a product-shaped f5 expression:
/// one top-level factor must normalize to f3 and the other must be a
/// two-slot symbol.
fn infer_witness(
    field: &FieldDesc,
    f3: &CohClass,
    f5_text: &str,
) -> Option<(SquareClass, SquareClass)> {
    let (lhs, rhs) = split_top_level_product(f5_text.trim())?;
    for (factor, other) in [(lhs, rhs), (rhs, lhs)] {
        if let Ok(class) = parse_expression(factor, field) {
            if &class == f3 {
                let other = other.trim();
                let inner = other.strip_prefix('(')?.strip_suffix(')')?;
                if let Ok(pair) = parse_square_class_pair(inner, field) {
                    return Some(pair);
                }
            }
        }
    }
    None
}

pub fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Normalize { field, expr } => {
            let f = field_of(field)?;
            let class = parse_expression(expr, &f)?;
            let human = format!("{expr} over {f} normalizes to {class}");
            Ok(ok(
                json!({"field": f.to_string(), "class": render::class_json(&class)}),
                human,
            ))
        }
        Command::Residue { field, var, expr } => {
            let f = field_of(field)?;
            let class = parse_expression(expr, &f)?;
            let d = class.decompose(var)?;
            let human = format!(
                "over {f}: {expr} = [{}] + ({var}).[{}]",
                d.unramified, d.residue
            );
            Ok(ok(render::decomposition_json(&d, var), human))
        }
        Command::Cup { field, lhs, rhs } => {
            let f = field_of(field)?;
            let l = parse_expression(lhs, &f)?;
            let r = parse_expression(rhs, &f)?;
            let c = l.cup(&r)?;
            let human = format!("({lhs}) * ({rhs}) = {c}");
            Ok(ok(
                json!({"field": f.to_string(), "class": render::class_json(&c)}),
                human,
            ))
        }
        Command::Iszero { field, expr } => {
            let f = field_of(field)?;
            let class = parse_expression(expr, &f)?;
            let z = class.is_zero();
            let human = format!("{expr} over {f} is {}", if z { "zero" } else { "nonzero" });
            Ok(ok(
                json!({
                    "field": f.to_string(),
                    "class": render::class_json(&class),
                    "is_zero": z,
                }),
                human,
            ))
        }
        Command::Pfister {
            field,
            form,
            divides: big,
            complement,
        } => {
            let f = field_of(field)?;
            let (scale, p) = parse_pfister(form, &f)?;
            let mut result = json!({
                "field": f.to_string(),
                "form": render::pfister_json(&p),
                "scale": scale.as_ref().map(ToString::to_string),
                "en": render::class_json(p.en()),
                "is_hyperbolic": p.is_hyperbolic(),
                "is_isotropic": p.is_isotropic(),
            });
            let mut human = format!(
                "{p} over {f}: e_{} = {}, {}",
                p.fold(),
                p.en(),
                if p.is_hyperbolic() {
                    "hyperbolic"
                } else {
                    "anisotropic"
                }
            );
            if let (Some(big), Some(complement)) = (big, complement) {
                let (_, big_form) = parse_pfister(big, &f)?;
                let (_, comp_form) = parse_pfister(complement, &f)?;
                let verdict = divides(&p, &big_form, &comp_form)?;
                result
                    .as_object_mut()
                    .expect("object")
                    .insert("divides".into(), json!(verdict));
                human.push_str(&format!(
                    "; divides {big_form} with complement {comp_form}: {verdict}"
                ));
            }
            Ok(ok(result, human))
        }
        Command::Albert {
            field,
            f3,
            f5,
            g3,
            witness,
        } => {
            let f = field_of(field)?;
            let albert = albert_from_args(&f, f3, f5, g3, witness)?;
            let killing = albert.killing_difference_e8()?;
            let human = format!(
                "Albert descriptor over {f}: nilpotent = {}, killing-comparison class = {}",
                albert.has_nilpotent(),
                killing
            );
            Ok(ok(
                json!({
                    "field": f.to_string(),
                    "f3": render::class_json(albert.f3()),
                    "f5": render::class_json(albert.f5()),
                    "g3": render::mod3_json(albert.g3()),
                    "has_nilpotent": albert.has_nilpotent(),
                    "killing_e8": render::class_json(&killing),
                }),
                human,
            ))
        }
        Command::Tits {
            field,
            oct_f3,
            f3,
            f5,
            g3,
            witness,
        } => {
            let f = field_of(field)?;
            let octonion = OctonionDesc::new(coerce_degree(parse_expression(oct_f3, &f)?, 3)?)?;
            let albert = albert_from_args(&f, f3, f5, g3, witness)?;
            let g = tits_construct(&octonion, &albert)?;
            let human = format!("two-algebra construction over {f}: {}", g.status().status);
            Ok(ok(render::e8_json(&g), human))
        }
        Command::Tmap {
            field,
            f3,
            f5,
            g3,
            witness,
        } => {
            let f = field_of(field)?;
            let albert = albert_from_args(&f, f3, f5, g3, witness)?;
            let g = t_map(&albert)?;
            let human = format!(
                "t of the Albert descriptor over {f}: {} (u = {})",
                g.status().status,
                g.u()
                    .map(ToString::to_string)
                    .unwrap_or_else(|| "absent".into())
            );
            Ok(ok(render::e8_json(&g), human))
        }
        Command::Status {
            field,
            rost2,
            rost3,
            u,
        } => {
            let f = field_of(field)?;
            let rost2 = coerce_degree(parse_expression(rost2, &f)?, 3)?;
            let rost3 = parse_mod3(rost3, &f, 3)?;
            let u = match u {
                Some(u) => Some(coerce_degree(parse_expression(u, &f)?, 5)?),
                None => None,
            };
            let g = E8Desc::from_invariants(rost2, rost3, u)?;
            let report = g.status();
            let human = format!("status over {f}: {} ({})", report.status, report.reason);
            Ok(ok(render::e8_json(&g), human))
        }
        Command::Spin16 {
            field,
            zeta,
            q1,
            q2,
            q,
        } => {
            let f = field_of(field)?;
            let eta = spin16_from_args(&f, zeta, q1, q2, q)?;
            let human = format!("Spin16 torsor over {f}: f4 = {}", eta.f4()?);
            Ok(ok(render::spin16_json(&eta), human))
        }
        Command::BasisEval {
            field,
            zeta,
            q1,
            q2,
            terms,
        } => {
            let f = field_of(field)?;
            let eta = spin16_from_args(
                &f,
                &Some(zeta.clone()),
                &Some(q1.clone()),
                &Some(q2.clone()),
                &None,
            )?;
            let base = FieldDesc::new(f.base(), &[] as &[&str], f.sqrt_adjoined())?;
            let mut lambda: Vec<(CohClass, BasisTag)> = Vec::new();
            for t in terms {
                let (tag_text, expr_text) = t
                    .split_once('=')
                    .ok_or_else(|| anyhow!("--term must be tag=expr, got `{t}`"))?;
                let tag = match tag_text.trim() {
                    "1" => BasisTag::One,
                    "f4" => BasisTag::F4,
                    "f5" => BasisTag::F5,
                    "u5" => BasisTag::U5,
                    "u6" => BasisTag::U6,
                    other => bail!("unknown basis tag `{other}` (expected 1, f4, f5, u5, u6)"),
                };
                let coeff = parse_expression(expr_text.trim(), &base)?;
                lambda.push((coeff, tag));
            }
            let value = eval_invariant(&lambda, &eta)?;
            let human = format!("evaluated invariant: {value}");
            Ok(ok(
                json!({
                    "field": f.to_string(),
                    "value": render::class_json(&value),
                }),
                human,
            ))
        }
        Command::ProvePro => {
            let replay = replay_pro_proof()?;
            let all = replay.steps.iter().all(|s| s.verified);
            let human = format!(
                "coefficients pinned: lambda5 = {}, lambda2 = {}, lambda0 = {} ({} steps verified)",
                replay.lambda5,
                replay.lambda2,
                replay.lambda0,
                replay.steps.len()
            );
            Ok(Outcome {
                result: render::replay_json(&replay),
                checks_pass: all,
                human,
            })
        }
        Command::EdWitness => {
            let w = ed_lower_bound_witness()?;
            let nonzero = !w.u6.is_zero();
            let human = format!(
                "u6 = {} over {} is nonzero: essential dimension >= {}",
                w.u6, w.field, w.lower_bound
            );
            Ok(Outcome {
                result: json!({
                    "field": w.field.to_string(),
                    "eta": render::spin16_json(&w.eta),
                    "u6": render::class_json(&w.u6),
                    "u6_nonzero": nonzero,
                    "lower_bound": w.lower_bound,
                }),
                checks_pass: nonzero,
                human,
            })
        }
        Command::Rootcheck {
            quadruple,
            kernel,
            center,
            klein,
        } => {
            let all = !(*quadruple || *kernel || *center || *klein);
            let mut checks: Vec<Value> = Vec::new();
            let mut result = json!({});
            let obj = result.as_object_mut().expect("object");
            let mut pass = true;
            if all || *quadruple {
                let report = verify_sl2_quadruple(&sl2_quadruple());
                let ok = report.in_lattice == [true; 4]
                    && report.orthogonal
                    && !report.degenerate
                    && (0..4).all(|i| report.gram[i][i] == 8);
                pass &= ok;
                checks.push(json!({
                    "name": "sl2-quadruple",
                    "pass": ok,
                    "detail": format!(
                        "in_lattice = {:?}, gram diagonal = {:?}, orthogonal = {}",
                        report.in_lattice,
                        [report.gram[0][0], report.gram[1][1], report.gram[2][2], report.gram[3][3]],
                        report.orthogonal
                    ),
                }));
                obj.insert("quadruple".into(), render::quadruple_json(&report));
                obj.insert("gram".into(), json!(report.gram));
            }
            if all || *kernel {
                let orders = kernel_quotient_order(&mu2_kernel_generators());
                let ok = orders.subgroup_order == 8 && orders.quotient_order == 2;
                pass &= ok;
                checks.push(json!({
                    "name": "kernel-subgroup",
                    "pass": ok,
                    "detail": format!(
                        "subgroup order {}, quotient order {}",
                        orders.subgroup_order, orders.quotient_order
                    ),
                }));
                obj.insert(
                    "kernel".into(),
                    json!({
                        "subgroup_order": orders.subgroup_order,
                        "quotient_order": orders.quotient_order,
                    }),
                );
            }
            if all || *center {
                let cochar = sl2_center_cocharacter();
                let v = center_pairing(&WeightVector::vector_weight(), &cochar)?;
                let h = center_pairing(&WeightVector::half_spin_weight(), &cochar)?;
                let ok = v == 1 && h == 0;
                pass &= ok;
                checks.push(json!({
                    "name": "center-pairings",
                    "pass": ok,
                    "detail": format!(
                        "vector character pairs to {v}, half-spin character pairs to {h}"
                    ),
                }));
                obj.insert(
                    "center".into(),
                    json!({"vector_pairing": v, "half_spin_pairing": h}),
                );
            }
            if all || *klein {
                let report = verify_klein_map();
                pass &= report.all_pass;
                for line in &report.checks {
                    checks.push(json!({
                        "name": format!("klein:{}", line.name),
                        "pass": line.pass,
                        "detail": line.detail,
                    }));
                }
                obj.insert("klein".into(), render::klein_json(&report));
            }
            obj.insert("checks".into(), json!(checks));
            obj.insert("all_pass".into(), json!(pass));
            let human = format!(
                "root data checks: {}",
                if pass { "all pass" } else { "FAILURES present" }
            );
            Ok(Outcome {
                result,
                checks_pass: pass,
                human,
            })
        }
        Command::Embed {
            group,
            field,
            facts,
        } => {
            let f = field_of(field)?;
            let g: FiniteGroup = group.parse().context("unknown finite group")?;
            let case = EmbeddingCase::for_group(g);
            let mut declared: Vec<NamedElement> = Vec::new();
            if let Some(facts) = facts {
                for token in facts.split(',').filter(|t| !t.trim().is_empty()) {
                    declared.push(
                        token
                            .trim()
                            .parse()
                            .with_context(|| format!("unknown named element `{}`", token.trim()))?,
                    );
                }
            }
            let facts = MembershipFacts::from_elements(&declared);
            let verdict = can_embed(&case, &f, &facts)?;
            let human = format!(
                "{} -> {} over {f}: {}",
                case.finite_group,
                case.target,
                if verdict.answer {
                    "embeds"
                } else {
                    "does not embed"
                }
            );
            let mut result = render::embed_json(&verdict);
            let obj = result.as_object_mut().expect("object");
            obj.insert("group".into(), json!(case.finite_group.to_string()));
            obj.insert("target".into(), json!(case.target.to_string()));
            obj.insert("n".into(), json!(case.n));
            obj.insert("field".into(), json!(f.to_string()));
            Ok(ok(result, human))
        }
        Command::Corpus { dir } => crate::corpus::run_corpus(dir.as_deref()),
    }
}

fn spin16_from_args(
    f: &FieldDesc,
    zeta: &Option<String>,
    q1: &Option<String>,
    q2: &Option<String>,
    q: &Option<String>,
) -> Result<Spin16Desc> {
    match (zeta, q1, q2, q) {
        (Some(zeta), Some(q1), Some(q2), None) => {
            let (zeta_v, zeta_h) = parse_square_class_pair(zeta, f)?;
            let (a1, b1) = parse_square_class_pair(q1, f)?;
            let (a2, b2) = parse_square_class_pair(q2, f)?;
            let q1 = QuaternionDesc::new(f, a1, b1)?;
            let q2 = QuaternionDesc::new(f, a2, b2)?;
            Ok(Spin16Desc::klein(f, zeta_v, zeta_h, q1, q2)?)
        }
        (None, None, None, Some(q)) => {
            let (scale, form) = parse_pfister(q, f)?;
            let scale = scale.ok_or_else(|| {
                anyhow!("the direct presentation needs a scale: `<alpha>*pf<<a,b,c,d>>`")
            })?;
            Ok(Spin16Desc::direct(scale, form)?)
        }
        _ => bail!("give either --zeta with --q1/--q2, or --q"),
    }
}
