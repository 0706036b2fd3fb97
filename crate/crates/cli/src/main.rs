//! `varitas`: command-line front end. Every command loads its inputs, calls
//! one library operation and renders the result.

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use varitas::files::{load_construction, load_group, load_variety};
use varitas::freeprod::{bounded_malnormal_check, free_probe, not_xt_witness, FreeConstruction, Side};
use varitas::properties::{verify_partition_count, zero_divisor_scan, Analysis};
use varitas::report::{subgroup_json, Method, PropertyReport};
use varitas::words::{marginal_subgroup, verbal_subgroup, FreeWord};
use varitas::{suite, Error, FiniteGroup, Lattice, Limits, SubgroupSet};

#[derive(Parser, Debug)]
#[command(name = "varitas", version, about = "Check XT and CSX properties of finite groups over finitely based varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value = "text")]
    output: Output,

    /// Largest group that may be constructed (overrides VARITAS_CAP_ORDER).
    #[arg(long, global = true)]
    cap_order: Option<usize>,

    /// Largest group whose subgroup lattice may be enumerated.
    #[arg(long, global = true)]
    cap_lattice: Option<usize>,

    /// Elementary products allowed per scan (overrides VARITAS_CAP_BUDGET).
    #[arg(long, global = true)]
    cap_budget: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Membership, XT, CSX or equational-domain check.
    Check {
        #[arg(value_enum)]
        what: CheckKind,
        #[command(flatten)]
        target: Target,
        /// direct|centralizer|condition|definition|normal-centralizer
        #[arg(long)]
        method: Option<String>,
    },
    /// The X-centralizer of one element.
    Centralizer {
        #[command(flatten)]
        target: Target,
        #[arg(long, visible_alias = "x")]
        element: String,
    },
    /// All subgroups, or the maximal X-subgroups with `--maximal`.
    Subgroups {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        maximal: bool,
    },
    /// Marginal subgroup of the variety's basis or of `--word`.
    Marginal(WordTarget),
    /// Verbal subgroup of the variety's basis or of `--word`.
    Verbal(WordTarget),
    /// Universal sentences Sub_X, Mal_X and X^n for n up to `--nmax`.
    Sentences {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
    },
    /// Counting identity for a cover of G \ 1 by conjugates of the reps.
    PartitionCount {
        #[arg(long)]
        group: String,
        /// Generators of one representative, separated by `;`. Repeatable.
        #[arg(long = "rep", required = true)]
        reps: Vec<String>,
    },
    /// Bounded checks on an amalgamated free product.
    Amalgam {
        #[command(subcommand)]
        action: AmalgamAction,
    },
    /// Bounded relation search in a free product.
    Probe {
        #[command(subcommand)]
        action: ProbeAction,
    },
    /// Every invariant over the built-in corpus.
    Suite {
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Member,
    Xt,
    Csx,
    Domain,
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long)]
    group: String,
    #[arg(long, default_value = "abelian")]
    variety: String,
}

#[derive(Args, Debug)]
struct WordTarget {
    #[arg(long)]
    group: String,
    #[arg(long, conflicts_with = "word")]
    variety: Option<String>,
    /// A word such as `[x1,x2]` or `x1^2`. Repeatable.
    #[arg(long)]
    word: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum AmalgamAction {
    /// Looks for `g` with `H^g` meeting `H` nontrivially, `g` of length <= len.
    CheckMalnormal {
        #[arg(long)]
        construction: String,
        #[arg(long, value_parser = ["A", "B"], default_value = "A")]
        factor: String,
        /// Generators of H inside the factor, separated by `;`; default the whole factor.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, default_value_t = 4)]
        len: usize,
    },
    /// Certifies that the construction violates a law of the variety.
    NotXtWitness {
        #[arg(long)]
        construction: String,
        #[arg(long, default_value = "metabelian")]
        variety: String,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ProbeAction {
    /// Do `w1`, `w2` satisfy any reduced relation of length <= len?
    Free {
        #[arg(long)]
        construction: String,
        #[arg(long)]
        w1: String,
        #[arg(long)]
        w2: String,
        #[arg(long, default_value_t = 10)]
        len: usize,
    },
}

/// Rendered output plus whether everything asserted held.
struct Outcome {
    text: String,
    json: Value,
    ok: bool,
}

fn limits(cli: &Cli) -> Result<Limits, Error> {
    let mut l = Limits::from_env()?;
    if let Some(v) = cli.cap_order {
        l.cap_order = v;
    }
    if let Some(v) = cli.cap_lattice {
        l.cap_lattice = v;
    }
    if let Some(v) = cli.cap_budget {
        l.budget = v;
    }
    l.validate()?;
    Ok(l)
}

fn analysis(t: &Target, limits: &Limits) -> Result<Analysis, Error> {
    let g = load_group(&t.group, limits)?;
    let x = load_variety(&t.variety)?;
    Ok(Analysis::new(Arc::new(g), Arc::new(x), *limits))
}

fn method(name: Option<&str>, default: Method) -> Result<Method, Error> {
    match name {
        None => Ok(default),
        Some(s) => Method::parse(s).ok_or_else(|| Error::InvalidParam(format!("unknown method `{s}`"))),
    }
}

fn reports(g: &FiniteGroup, rs: &[PropertyReport]) -> Outcome {
    Outcome {
        text: rs.iter().map(|r| r.to_text(g) + "\n").collect(),
        json: Value::Array(rs.iter().map(|r| r.to_json(g)).collect()),
        ok: true,
    }
}

fn subgroup_text(g: &FiniteGroup, h: &SubgroupSet) -> String {
    format!("order {} generated by [{}]", h.order(), h.generators().iter().map(|&x| g.label(x)).collect::<Vec<_>>().join(", "))
}

fn elements(g: &FiniteGroup, spec: &str) -> Result<Vec<usize>, Error> {
    spec.split(';').filter(|s| !s.trim().is_empty()).map(|s| g.element(s)).collect()
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let limits = limits(cli)?;
    match &cli.command {
        Command::Check { what, target, method: m } => {
            let m = m.as_deref();
            if *what == CheckKind::Domain {
                let g = load_group(&target.group, &limits)?;
                let r = zero_divisor_scan(&g, method(m, Method::Definition)?, &limits)?;
                return Ok(reports(&g, &[r.report]));
            }
            let a = analysis(target, &limits)?;
            let r = match what {
                CheckKind::Member => a.member_report()?,
                CheckKind::Xt => a.is_xt(method(m, Method::Direct)?)?,
                CheckKind::Csx => a.is_csx(method(m, Method::Direct)?)?,
                CheckKind::Domain => unreachable!(),
            };
            Ok(reports(a.group(), &[r]))
        }
        Command::Centralizer { target, element } => {
            let a = analysis(target, &limits)?;
            let g = a.group();
            let x = g.element(element)?;
            let c = a.x_centralizer(x)?;
            let labels = |v: &[usize]| v.iter().map(|&y| g.label(y).to_string()).collect::<Vec<_>>();
            let mut j = json!({
                "group": g.name(),
                "variety": a.variety().name,
                "element": g.label(x),
                "members": labels(&c.members),
                "closed": c.closed,
                "generated_in_x": c.generated_in_x,
            });
            if let Some((p, q)) = c.not_closed {
                j["not_closed"] = json!([g.label(p), g.label(q)]);
            }
            let text = format!(
                "C_{}({}) in {}: {} elements, closed {}, generated subgroup in X {}\n  {}\n",
                a.variety().name,
                g.label(x),
                g.name(),
                c.members.len(),
                c.closed,
                c.generated_in_x,
                labels(&c.members).join(" ")
            );
            Ok(Outcome { text, json: j, ok: true })
        }
        Command::Subgroups { target, maximal } => {
            let a = analysis(target, &limits)?;
            let g = a.group();
            let (list, kind): (Vec<(SubgroupSet, Value)>, &str) = if *maximal {
                let ms = a.maximal_x_subgroups()?;
                let mut out = Vec::new();
                for m in ms {
                    let mal = g.is_malnormal(&m)?.verdict;
                    out.push((m, json!({"malnormal": mal})));
                }
                (out, "maximal-x")
            } else {
                let lat: &Arc<Lattice> = a.lattice()?;
                let out = (0..lat.len()).map(|i| (lat.get(i).clone(), json!({"normal": lat.is_normal(i)}))).collect();
                (out, "all")
            };
            let mut text = String::new();
            let mut arr = Vec::new();
            for (h, extra) in &list {
                let mut v = subgroup_json(g, h);
                for (k, x) in extra.as_object().into_iter().flatten() {
                    v[k] = x.clone();
                    text.push_str(&format!("{} {k}={x}\n", subgroup_text(g, h)));
                }
                arr.push(v);
            }
            let json = json!({"group": g.name(), "variety": a.variety().name, "kind": kind, "subgroups": arr});
            Ok(Outcome { text, json, ok: true })
        }
        Command::Marginal(t) | Command::Verbal(t) => {
            let marginal = matches!(cli.command, Command::Marginal(_));
            let g = load_group(&t.group, &limits)?;
            let words: Vec<FreeWord> = if t.word.is_empty() {
                load_variety(t.variety.as_deref().unwrap_or("abelian"))?.basis
            } else {
                t.word.iter().map(|w| FreeWord::parse(w)).collect::<Result<_, _>>()?
            };
            let h = if marginal {
                marginal_subgroup(&g, &words, &limits)?
            } else {
                verbal_subgroup(&g, &words, &limits)?
            };
            let kind = if marginal { "marginal" } else { "verbal" };
            let ws: Vec<String> = words.iter().map(|w| w.to_string()).collect();
            let text = format!("{kind} subgroup of {} for {}: {}\n", g.name(), ws.join(", "), subgroup_text(&g, &h));
            let json = json!({"group": g.name(), "kind": kind, "words": ws, "subgroup": subgroup_json(&g, &h)});
            Ok(Outcome { text, json, ok: true })
        }
        Command::Sentences { target, nmax } => {
            let a = analysis(target, &limits)?;
            let s = a.sentences(*nmax)?;
            let mut text = String::new();
            for v in std::iter::once(&s.sub_x).chain(std::iter::once(&s.mal_x)).chain(&s.xn) {
                text.push_str(&format!("{} {} {}: {}\n", v.sentence, a.group().name(), a.variety().name, v.holds));
            }
            let mut json = s.to_json(a.group());
            json["group"] = json!(a.group().name());
            json["variety"] = json!(a.variety().name);
            Ok(Outcome { text, json, ok: true })
        }
        Command::PartitionCount { group, reps } => {
            let g = load_group(group, &limits)?;
            let subs =
                reps.iter().map(|r| g.generate(&elements(&g, r)?)).collect::<Result<Vec<_>, _>>()?;
            let r = verify_partition_count(&g, &subs)?;
            let sum: usize = r.terms.iter().sum();
            let text = format!(
                "{}: {} = {} ({}), partition {}, malnormal {}\n",
                g.name(),
                r.lhs,
                sum,
                r.terms.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" + "),
                r.partition_ok,
                r.malnormal_ok
            );
            let mut json = serde_json::to_value(&r).map_err(|e| Error::Format(e.to_string()))?;
            json["group"] = json!(g.name());
            json["reps"] = Value::Array(subs.iter().map(|h| subgroup_json(&g, h)).collect());
            Ok(Outcome { text, json, ok: r.count_identity_ok })
        }
        Command::Amalgam { action } => amalgam(action, &limits),
        Command::Probe { action: ProbeAction::Free { construction, w1, w2, len } } => {
            let k = load_construction(construction, &limits)?;
            let (u, v) = (k.parse(w1)?, k.parse(w2)?);
            let r = free_probe(&k, &u, &v, *len, &limits)?;
            let witness = r.witness.as_ref().map(|w| w.to_string());
            let text = match &witness {
                None => format!("{}: no relation between w1 and w2 up to length {} ({} words)\n", k.name(), len, r.checked),
                Some(w) => format!("{}: relation {w} = 1 at (w1, w2)\n", k.name()),
            };
            let json = json!({
                "construction": k.name(),
                "w1": k.to_json(&u),
                "w2": k.to_json(&v),
                "max_len": r.max_len,
                "checked": r.checked,
                "no_relation": r.ok,
                "witness": witness,
            });
            Ok(Outcome { text, json, ok: r.ok })
        }
        Command::Suite { jobs } => {
            let r = suite::run(&limits, *jobs)?;
            Ok(Outcome { text: r.to_text(), json: r.to_json(), ok: r.all_passed() })
        }
    }
}

fn factor_elements(k: &FreeConstruction, s: Side, spec: &str) -> Result<Vec<usize>, Error> {
    let f = k.factor(s);
    spec.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            f.group()
                .elements()
                .find(|&x| f.label(x) == t)
                .ok_or_else(|| Error::Format(format!("no element `{t}` in factor {s}")))
        })
        .collect()
}

fn amalgam(action: &AmalgamAction, limits: &Limits) -> Result<Outcome, Error> {
    match action {
        AmalgamAction::CheckMalnormal { construction, factor, subgroup, len } => {
            let k = load_construction(construction, limits)?;
            let s = if factor == "A" { Side::A } else { Side::B };
            let f = k.factor(s).group();
            let h = match subgroup {
                Some(spec) => f.generate(&factor_elements(&k, s, spec)?)?,
                None => f.whole(),
            };
            let r = bounded_malnormal_check(&k, s, &h, *len, limits)?;
            let labels: Vec<&str> = h.generators().iter().map(|&x| k.factor(s).label(x)).collect();
            let witness = r.witness.as_ref().map(|(g, x)| json!({"g": k.to_json(g), "h": k.factor(s).label(*x)}));
            let text = match &r.witness {
                None => format!(
                    "{}: subgroup <{}> of {s} is malnormal up to length {} ({} elements checked)\n",
                    k.name(),
                    labels.join(", "),
                    len,
                    r.checked
                ),
                Some((g, x)) => format!(
                    "{}: subgroup <{}> of {s} is not malnormal: g = {}, h = {}\n",
                    k.name(),
                    labels.join(", "),
                    k.display(g),
                    k.factor(s).label(*x)
                ),
            };
            let json = json!({
                "construction": k.name(),
                "factor": s.to_string(),
                "subgroup": labels,
                "max_len": r.max_len,
                "checked": r.checked,
                "ok": r.ok,
                "witness": witness,
            });
            Ok(Outcome { text, json, ok: r.ok })
        }
        AmalgamAction::NotXtWitness { construction, variety, depth } => {
            let k = load_construction(construction, limits)?;
            let x = load_variety(variety)?;
            let r = not_xt_witness(&k, &x, *depth, limits)?;
            let tuple: Option<Vec<Value>> = r.tuple.as_ref().map(|t| t.iter().map(|w| k.to_json(w)).collect());
            let json = json!({
                "construction": k.name(),
                "variety": x.name,
                "depth": depth,
                "a_member": r.a_member,
                "b_member": r.b_member,
                "intersection": k.to_json(&r.intersection),
                "law": r.law.as_ref().map(|w| w.to_string()),
                "tuple": tuple,
                "value": r.value.as_ref().map(|w| k.to_json(w)),
                "certified": r.certified(),
            });
            let text = match (&r.law, &r.tuple, &r.value) {
                (Some(law), Some(t), Some(v)) if r.certified() => format!(
                    "{}: A and B in {}, {} in both, {law} at ({}) = {} != 1\n",
                    k.name(),
                    x.name,
                    k.display(&r.intersection),
                    t.iter().map(|w| k.display(w)).collect::<Vec<_>>().join(", "),
                    k.display(v)
                ),
                _ => format!("{}: inconclusive at depth {depth}\n", k.name()),
            };
            Ok(Outcome { text, json, ok: r.certified() })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.output {
                Output::Text => print!("{}", out.text),
                Output::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json renders")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
