//! Command-line front end.
//!
//! Verbs: `group`, `compose`, `decompose`, `plus`, `ghost`, `marks`,
//! `unmark`, `species`, `verify`.  All output is deterministic: identical
//! invocations produce byte-identical stdout.  Domain errors print a
//! structured JSON object on stderr and exit 1; argument errors exit 2.

use crate::biset::{
    decompose_standard, elementary, mackey_compose, standard_basis, BisetElement, Elementary,
};
use crate::concrete::tensor_oracle;
use crate::error::{Error, Result};
use crate::functor::{functor_from_selector, CoeffFunctor};
use crate::ghost::{ghost_act, ghost_expand, ghost_mult, GhostElement};
use crate::group::{
    group_from_spec, is_normal_in, preset, quotient_group, GroupDescriptor, GroupHom, PermGroup,
};
use crate::json::{
    biset_to_json, ghost_from_json, ghost_to_json, plus_to_json, product_generator_pairs, SCHEMA,
};
use crate::lattice::lattice_of;
use crate::mark::{mark, marks_table, mobius_inverse};
use crate::plus::{canonical_basis, canonicalize_at_entry, plus_act, plus_mult, plus_one, PlusElement};
use crate::species::evaluation_matrix;
use crate::verify::{run_suite, SuiteReport, SUITE_NAMES};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;

#[derive(Parser)]
#[command(
    name = "bisetplus",
    version,
    about = "Exact arithmetic for double Burnside groups, plus-constructions, marks, and species"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PlusOp {
    Unit,
    Basis,
    Mult,
    Act,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum GhostOp {
    Unit,
    Expand,
    Mult,
    Act,
}

#[derive(Subcommand)]
enum Verb {
    /// Print the subgroup lattice and conjugacy-class structure of a group.
    Group {
        /// Preset name (S3, C4, D6, …) or a JSON group descriptor.
        group: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Mackey-compose two biset expressions (`op:SOURCE>TARGET` or `id:G`).
    Compose {
        /// Left factor, e.g. "res:S3>C2" (element of B(C2, S3)).
        #[arg(long)]
        left: String,
        /// Right factor, e.g. "ind:C3>S3" (element of B(S3, C3)).
        #[arg(long)]
        right: String,
        /// Also run the explicit orbit-counting oracle and report agreement.
        #[arg(long)]
        check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Factor a standard class into ind · inf · iso · def · res.
    Decompose {
        /// Left group of the class.
        #[arg(long)]
        left: String,
        /// Right group of the class.
        #[arg(long)]
        right: String,
        /// Index of the class in the standard basis printed order.
        #[arg(long)]
        class: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Arithmetic in the plus-construction F₊(G).
    Plus {
        #[arg(long)]
        group: Option<String>,
        /// Coefficient functor: "const" or "fibered:n".
        #[arg(long, default_value = "const")]
        functor: String,
        #[arg(long, value_enum)]
        op: PlusOp,
        /// First operand, as an element literal.
        #[arg(long)]
        x: Option<String>,
        /// Second operand (for mult).
        #[arg(long)]
        y: Option<String>,
        /// Acting biset expression (for act); x is over its source group.
        #[arg(long)]
        biset: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Arithmetic in the ghost module F⁺(G).
    Ghost {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "const")]
        functor: String,
        #[arg(long, value_enum)]
        op: GhostOp,
        /// Ghost tuple ("unit", a flat list "3,1,0,0", or per-class "a,b;c;d").
        #[arg(long)]
        x: Option<String>,
        #[arg(long)]
        y: Option<String>,
        /// Acting biset expression (for act); requires a free right action.
        #[arg(long)]
        biset: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the table of marks, or the mark of a given element.
    Marks {
        group: String,
        /// Element literal to take the mark of (default: whole table).
        #[arg(long)]
        of: Option<String>,
        #[arg(long, default_value = "const")]
        functor: String,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Möbius-invert a ghost tuple back to F₊(G) (the |G|-scaled inverse of mark).
    Unmark {
        #[arg(long)]
        group: Option<String>,
        #[arg(long, default_value = "const")]
        functor: String,
        /// Ghost tuple in the flat or per-class text form.
        #[arg(long)]
        values: Option<String>,
        /// Full ghost JSON payload (overrides --group/--functor/--values).
        #[arg(long)]
        json: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the species table (rows = species, columns = canonical basis).
    Species {
        group: String,
        #[arg(long, default_value = "const")]
        functor: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite over a list of groups.
    Verify {
        /// Suite name, or "all".
        #[arg(long)]
        suite: String,
        /// Comma-separated presets/descriptors; "preset:upto24" is the stock list.
        #[arg(long)]
        groups: String,
        #[arg(long, default_value = "const")]
        functor: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// "z" for integer scalars, "q" for the rational inverse identities.
        #[arg(long, default_value = "z")]
        scalars: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Entry point used by the binary: returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.verb) {
        Ok(code) => code,
        Err(e) => {
            let payload = json!({
                "schema": SCHEMA,
                "error": { "code": e.code(), "message": e.to_string() },
            });
            eprintln!("{payload}");
            e.exit_code()
        }
    }
}

fn dispatch(verb: Verb) -> Result<i32> {
    match verb {
        Verb::Group { group, format } => cmd_group(&group, format),
        Verb::Compose {
            left,
            right,
            check,
            format,
        } => cmd_compose(&left, &right, check, format),
        Verb::Decompose {
            left,
            right,
            class,
            format,
        } => cmd_decompose(&left, &right, class, format),
        Verb::Plus {
            group,
            functor,
            op,
            x,
            y,
            biset,
            format,
        } => cmd_plus(group.as_deref(), &functor, op, x.as_deref(), y.as_deref(), biset.as_deref(), format),
        Verb::Ghost {
            group,
            functor,
            op,
            x,
            y,
            biset,
            format,
        } => cmd_ghost(group.as_deref(), &functor, op, x.as_deref(), y.as_deref(), biset.as_deref(), format),
        Verb::Marks {
            group,
            of,
            functor,
            format,
        } => cmd_marks(&group, of.as_deref(), &functor, format),
        Verb::Unmark {
            group,
            functor,
            values,
            json,
            format,
        } => cmd_unmark(group.as_deref(), &functor, values.as_deref(), json.as_deref(), format),
        Verb::Species {
            group,
            functor,
            format,
        } => cmd_species(&group, &functor, format),
        Verb::Verify {
            suite,
            groups,
            functor,
            seed,
            scalars,
            format,
        } => cmd_verify(&suite, &groups, &functor, seed, &scalars, format),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

fn need<'a>(opt: Option<&'a str>, flag: &str, ctx: &str) -> Result<&'a str> {
    opt.ok_or_else(|| Error::Parse(format!("{ctx} requires {flag}")))
}

fn group_name(g: &PermGroup) -> String {
    g.name().map(str::to_string).unwrap_or_else(|| format!("G{}", g.order()))
}

/// Caches groups by their spec text so both factors of a composition see the
/// identical instance for the same source text.
#[derive(Default)]
struct GroupCache(BTreeMap<String, PermGroup>);

impl GroupCache {
    fn get(&mut self, spec: &str) -> Result<PermGroup> {
        if let Some(g) = self.0.get(spec) {
            return Ok(g.clone());
        }
        let g = group_from_spec(spec)?;
        self.0.insert(spec.to_string(), g.clone());
        Ok(g)
    }
}

fn element_order(g: &PermGroup, i: u32) -> usize {
    let id = g.identity_index();
    let mut x = i;
    let mut k = 1;
    while x != id {
        x = g.mul_idx(x, i);
        k += 1;
    }
    k
}

fn order_profile(g: &PermGroup) -> Vec<usize> {
    let mut p: Vec<usize> = (0..g.order() as u32).map(|i| element_order(g, i)).collect();
    p.sort_unstable();
    p
}

/// Brute-force isomorphism test by extending generator images.  Orders here
/// never exceed the preset range, so the search is tiny.
fn is_isomorphic(a: &PermGroup, b: &PermGroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if order_profile(a) != order_profile(b) {
        return false;
    }
    let gens: Vec<u32> = a
        .generators()
        .iter()
        .filter_map(|p| a.index_of(p))
        .collect();
    let mut images: Vec<(crate::perm::Perm, crate::perm::Perm)> = Vec::new();
    extend_iso(a, b, &gens, &mut images)
}

fn extend_iso(
    a: &PermGroup,
    b: &PermGroup,
    gens: &[u32],
    images: &mut Vec<(crate::perm::Perm, crate::perm::Perm)>,
) -> bool {
    let k = images.len();
    if k == gens.len() {
        return match GroupHom::from_generator_images(a.clone(), b.clone(), images) {
            Ok(h) => h.kernel().order() == 1,
            Err(_) => false,
        };
    }
    let want = element_order(a, gens[k]);
    for cand in 0..b.order() as u32 {
        if element_order(b, cand) != want {
            continue;
        }
        images.push((a.elem(gens[k]).clone(), b.elem(cand).clone()));
        if extend_iso(a, b, gens, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Resolve a subgroup locator inside `big`: `#k` is a lattice entry index,
/// a preset name picks the first entry isomorphic to that preset.
fn locate_subgroup(big: &PermGroup, spec: &str) -> Result<PermGroup> {
    let lat = lattice_of(big);
    if let Some(num) = spec.strip_prefix('#') {
        let k: u32 = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad lattice index {spec:?}")))?;
        if k as usize >= lat.len() {
            return Err(Error::UnknownLabel(format!(
                "lattice index {k} out of range ({} entries)",
                lat.len()
            )));
        }
        return Ok(lat.group_of(k).clone());
    }
    let want = preset(spec)?;
    for i in 0..lat.len() as u32 {
        if lat.entry(i).order() == want.order() && is_isomorphic(lat.group_of(i), &want) {
            return Ok(lat.group_of(i).clone().renamed(spec));
        }
    }
    Err(Error::NotASubgroup(format!(
        "{} has no subgroup isomorphic to {spec}",
        group_name(big)
    )))
}

/// Resolve a quotient locator for `big`: `#k` names the normal subgroup by
/// lattice entry, a preset name picks the first normal subgroup whose
/// quotient is isomorphic to that preset.  Returns the projection.
fn locate_quotient(big: &PermGroup, spec: &str) -> Result<GroupHom> {
    let lat = lattice_of(big);
    if let Some(num) = spec.strip_prefix('#') {
        let k: u32 = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad lattice index {spec:?}")))?;
        if k as usize >= lat.len() {
            return Err(Error::UnknownLabel(format!(
                "lattice index {k} out of range ({} entries)",
                lat.len()
            )));
        }
        return Ok(quotient_group(big, lat.group_of(k))?.1);
    }
    let want = preset(spec)?;
    if big.order() % want.order() != 0 {
        return Err(Error::Incompatible(format!(
            "|{}| is not divisible by |{spec}|",
            group_name(big)
        )));
    }
    for i in 0..lat.len() as u32 {
        if lat.entry(i).order() * want.order() != big.order() {
            continue;
        }
        let n = lat.group_of(i);
        if !is_normal_in(n, big) {
            continue;
        }
        let (q, epi) = quotient_group(big, n)?;
        if is_isomorphic(&q, &want) {
            return Ok(epi);
        }
    }
    Err(Error::NotNormal(format!(
        "{} has no normal subgroup with quotient isomorphic to {spec}",
        group_name(big)
    )))
}

/// Parse a biset expression: `id:G`, `res:BIG>SUB`, `ind:SUB>BIG`,
/// `inf:QUOT>BIG`, `def:BIG>QUOT`.  The element of `B(TARGET, SOURCE)` for
/// the morphism SOURCE → TARGET.
fn parse_biset_expr(cache: &mut GroupCache, text: &str) -> Result<BisetElement> {
    let t = text.trim();
    let (op, rest) = t
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("biset expression {t:?} is not of the form op:…")))?;
    if op == "id" {
        return Ok(BisetElement::identity(&cache.get(rest.trim())?));
    }
    let (src, tgt) = rest
        .split_once('>')
        .ok_or_else(|| Error::Parse(format!("expression {t:?} needs the form {op}:SOURCE>TARGET")))?;
    let (src, tgt) = (src.trim(), tgt.trim());
    let e = match op {
        "res" => {
            let big = cache.get(src)?;
            let small = locate_subgroup(&big, tgt)?;
            Elementary::Res { big, small }
        }
        "ind" => {
            let big = cache.get(tgt)?;
            let small = locate_subgroup(&big, src)?;
            Elementary::Ind { big, small }
        }
        "inf" => {
            let big = cache.get(tgt)?;
            let epi = locate_quotient(&big, src)?;
            Elementary::Inf { epi }
        }
        "def" => {
            let big = cache.get(src)?;
            let epi = locate_quotient(&big, tgt)?;
            Elementary::Def { epi }
        }
        other => {
            return Err(Error::Parse(format!(
                "unknown biset operation {other:?} (expected id, res, ind, inf, def)"
            )))
        }
    };
    elementary(&e)
}

// ---------------------------------------------------------------------------
// Element rendering (text forms)
// ---------------------------------------------------------------------------

/// Element literal: terms `[H:label]` (coefficient suffix `*c` when c ≠ 1)
/// joined by " + ".  `H` is the lattice entry index of the class
/// representative; the full group prints as its name.
fn render_plus(f: &dyn CoeffFunctor, x: &PlusElement<i64>) -> Result<String> {
    if x.is_zero() {
        return Ok("0".into());
    }
    let g = x.group();
    let lat = lattice_of(g);
    let mut parts = Vec::new();
    for ((class, b), &coeff) in x.terms() {
        let rep = lat.class(class).rep();
        let sub = if lat.entry(rep).order() == g.order() {
            group_name(g)
        } else {
            rep.to_string()
        };
        let label = if f.name() == "const" {
            "1".to_string()
        } else {
            f.basis_label(lat.rep_group(class), b)?
        };
        let base = format!("[{sub}:{label}]");
        parts.push(if coeff == 1 {
            base
        } else {
            format!("{base}*{coeff}")
        });
    }
    Ok(parts.join(" + "))
}

/// Accepts the rendered form above, the bracket-free `H:label*coeff` form,
/// and `0` for the zero element.
fn parse_plus(f: &dyn CoeffFunctor, g: &PermGroup, text: &str) -> Result<PlusElement<i64>> {
    let trimmed = text.trim();
    let mut out = PlusElement::zero(g);
    if trimmed == "0" || trimmed.is_empty() {
        return Ok(out);
    }
    let lat = lattice_of(g);
    for raw in trimmed.split('+') {
        let part = raw.trim();
        if part.is_empty() {
            return Err(Error::Parse(format!("empty term in element literal {text:?}")));
        }
        let (head, coeff_text) = match part.rsplit_once('*') {
            Some((h, c)) if c.trim().parse::<i64>().is_ok() => (h.trim(), c.trim()),
            _ => (part, "1"),
        };
        let coeff: i64 = coeff_text
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {coeff_text:?} in {part:?}")))?;
        let inner = if head.starts_with('[') && head.ends_with(']') {
            &head[1..head.len() - 1]
        } else {
            head
        };
        let (sub, label_text) = inner
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("term {part:?} is not of the form [H:label]*coeff")))?;
        let sub = sub.trim();
        let entry: u32 = if let Ok(k) = sub.parse::<u32>() {
            k
        } else if let Some(num) = sub.strip_prefix('#') {
            num.parse()
                .map_err(|_| Error::Parse(format!("bad subgroup index {sub:?}")))?
        } else if Some(sub) == g.name() {
            lat.len() as u32 - 1
        } else {
            return Err(Error::Parse(format!(
                "subgroup {sub:?} is neither a lattice index nor the group name"
            )));
        };
        if entry as usize >= lat.len() {
            return Err(Error::UnknownLabel(format!(
                "subgroup index {entry} out of range ({} entries)",
                lat.len()
            )));
        }
        let h = lat.group_of(entry).clone();
        let label = f.parse_label(&h, label_text.trim())?;
        let key = canonicalize_at_entry(f, &lat, entry, &h, label)?;
        out.add_term(key, coeff);
    }
    Ok(out)
}

/// Ghost tuple text: single-coefficient components print as a flat row
/// ("1 1 1 1"); larger components are comma-joined and separated by "; ".
fn render_ghost(y: &GhostElement<i64>) -> String {
    let lat = lattice_of(y.group());
    let comps: Vec<&[i64]> = (0..lat.num_classes() as u32).map(|c| y.component(c)).collect();
    if comps.iter().all(|c| c.len() == 1) {
        comps
            .iter()
            .map(|c| c[0].to_string())
            .collect::<Vec<_>>()
            .join(" ")
    } else {
        comps
            .iter()
            .map(|c| {
                c.iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Accepts "unit", the per-class "a,b;c;d" form, or a flat list of numbers
/// consumed class-by-class in basis order.
fn parse_ghost(f: &dyn CoeffFunctor, g: &PermGroup, text: &str) -> Result<GhostElement<i64>> {
    let t = text.trim();
    if t == "unit" {
        return GhostElement::unit(f, g);
    }
    let lat = lattice_of(g);
    let sizes: Vec<usize> = (0..lat.num_classes() as u32)
        .map(|c| f.basis_size(lat.rep_group(c)))
        .collect::<Result<_>>()?;
    let parse_int = |s: &str| -> Result<i64> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad ghost coefficient {s:?}")))
    };
    let components: Vec<Vec<i64>> = if t.contains(';') {
        t.split(';')
            .map(|seg| {
                seg.split(',')
                    .filter(|p| !p.trim().is_empty())
                    .map(parse_int)
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?
    } else {
        let flat: Vec<i64> = t
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.trim().is_empty())
            .map(parse_int)
            .collect::<Result<_>>()?;
        let total: usize = sizes.iter().sum();
        if flat.len() != total {
            return Err(Error::Parse(format!(
                "expected {total} ghost coefficients, got {}",
                flat.len()
            )));
        }
        let mut it = flat.into_iter();
        sizes
            .iter()
            .map(|&n| (&mut it).take(n).collect::<Vec<_>>())
            .collect()
    };
    GhostElement::from_components(f, g, components)
}

fn render_biset_text(x: &BisetElement) -> Result<String> {
    let mut lines = vec![format!(
        "B({}, {})  terms: {}",
        group_name(x.left()),
        group_name(x.right()),
        x.num_terms()
    )];
    for (d, coeff) in x.terms() {
        let gens = product_generator_pairs(d)?;
        let gens_text = if gens.is_empty() {
            "1".to_string()
        } else {
            gens.iter()
                .map(|&(a, b)| format!("({}, {})", x.left().elem(a), x.right().elem(b)))
                .collect::<Vec<_>>()
                .join(" ")
        };
        lines.push(format!("  {coeff} * [order {} : {gens_text}]", d.order()));
    }
    Ok(lines.join("\n"))
}

fn print_value(v: &Value) {
    println!("{v}");
}

// ---------------------------------------------------------------------------
// Verbs
// ---------------------------------------------------------------------------

fn cmd_group(spec: &str, format: Format) -> Result<i32> {
    let g = group_from_spec(spec)?;
    let lat = lattice_of(&g);
    match format {
        Format::Json => {
            let entries: Vec<Value> = (0..lat.len() as u32)
                .map(|i| {
                    let e = lat.entry(i);
                    json!({
                        "index": i,
                        "order": e.order(),
                        "class": e.class(),
                        "generators": e
                            .gens()
                            .iter()
                            .map(|&x| g.elem(x).images().to_vec())
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            let classes: Vec<Value> = (0..lat.num_classes() as u32)
                .map(|c| {
                    let cl = lat.class(c);
                    json!({ "index": c, "rep": cl.rep(), "size": cl.members().len() })
                })
                .collect();
            let n = lat.len() as u32;
            let mobius: Vec<Vec<i64>> = (0..n)
                .map(|l| (0..n).map(|k| lat.mobius(l, k)).collect())
                .collect();
            print_value(&json!({
                "schema": SCHEMA,
                "group": GroupDescriptor::of_group(&g),
                "order": g.order(),
                "entries": entries,
                "classes": classes,
                "mobius": mobius,
            }));
        }
        _ => {
            println!(
                "{}: order {}, {} subgroups in {} classes",
                group_name(&g),
                g.order(),
                lat.len(),
                lat.num_classes()
            );
            println!("index\torder\tclass\tgenerators");
            for i in 0..lat.len() as u32 {
                let e = lat.entry(i);
                let gens = if e.gens().is_empty() {
                    "1".to_string()
                } else {
                    e.gens()
                        .iter()
                        .map(|&x| g.elem(x).to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                };
                println!("{i}\t{}\t{}\t{gens}", e.order(), e.class());
            }
        }
    }
    Ok(0)
}

fn cmd_compose(left: &str, right: &str, check: bool, format: Format) -> Result<i32> {
    let mut cache = GroupCache::default();
    let l = parse_biset_expr(&mut cache, left)?;
    let r = parse_biset_expr(&mut cache, right)?;
    let product = mackey_compose(&l, &r)?;
    let oracle_agrees = if check {
        let mut oracle = BisetElement::zero(product.left(), product.right());
        for (d, cd) in l.terms() {
            for (e, ce) in r.terms() {
                oracle = oracle.add(&tensor_oracle(d, e)?.scale(cd * ce))?;
            }
        }
        Some(oracle == product)
    } else {
        None
    };
    match format {
        Format::Json => {
            let mut v = biset_to_json(&product)?;
            v["num_terms"] = json!(product.num_terms());
            if let Some(ok) = oracle_agrees {
                v["oracle_agrees"] = json!(ok);
            }
            print_value(&v);
        }
        _ => {
            println!("{}", render_biset_text(&product)?);
            if let Some(ok) = oracle_agrees {
                println!("oracle: {}", if ok { "agree" } else { "DISAGREE" });
            }
        }
    }
    Ok(0)
}

fn cmd_decompose(left: &str, right: &str, class: usize, format: Format) -> Result<i32> {
    let mut cache = GroupCache::default();
    let g = cache.get(left)?;
    let h = cache.get(right)?;
    let basis = standard_basis(&g, &h);
    let d = basis.get(class).ok_or_else(|| {
        Error::UnknownLabel(format!(
            "class index {class} out of range (B({}, {}) has {} standard classes)",
            group_name(&g),
            group_name(&h),
            basis.len()
        ))
    })?;
    let dec = decompose_standard(d)?;
    let recomposed = dec.recompose()? == BisetElement::from_class(d);
    let kinds = ["ind", "inf", "iso", "def", "res"];
    match format {
        Format::Json => {
            let factors: Vec<Value> = kinds
                .iter()
                .zip(dec.factors())
                .map(|(k, b)| Ok(json!({ "kind": k, "biset": biset_to_json(b)? })))
                .collect::<Result<_>>()?;
            print_value(&json!({
                "schema": SCHEMA,
                "class": biset_to_json(&BisetElement::from_class(d))?,
                "through": [
                    GroupDescriptor::of_group(&dec.p1),
                    GroupDescriptor::of_group(&dec.q1),
                    GroupDescriptor::of_group(&dec.q2),
                    GroupDescriptor::of_group(&dec.p2),
                ],
                "factors": factors,
                "recomposes": recomposed,
            }));
        }
        _ => {
            println!(
                "[{}x{}/D] with |D| = {}",
                group_name(&g),
                group_name(&h),
                d.order()
            );
            for (k, b) in kinds.iter().zip(dec.factors()) {
                println!("{k}:\t{}", render_biset_text(b)?.replace('\n', "\n\t"));
            }
            println!("recomposes: {recomposed}");
        }
    }
    Ok(0)
}

fn cmd_plus(
    group: Option<&str>,
    functor: &str,
    op: PlusOp,
    x: Option<&str>,
    y: Option<&str>,
    biset: Option<&str>,
    format: Format,
) -> Result<i32> {
    let f = functor_from_selector(functor)?;
    let out: PlusElement<i64>;
    match op {
        PlusOp::Unit => {
            let g = group_from_spec(need(group, "--group", "plus --op unit")?)?;
            out = plus_one(f.as_ref(), &g)?;
        }
        PlusOp::Basis => {
            let g = group_from_spec(need(group, "--group", "plus --op basis")?)?;
            let basis = canonical_basis(f.as_ref(), &g)?;
            let lat = lattice_of(&g);
            match format {
                Format::Json => {
                    let items: Vec<Value> = basis
                        .iter()
                        .map(|&(c, b)| {
                            Ok(json!({
                                "entry": lat.class(c).rep(),
                                "label": f.label_value(lat.rep_group(c), b)?,
                            }))
                        })
                        .collect::<Result<_>>()?;
                    print_value(&json!({
                        "schema": SCHEMA,
                        "group": GroupDescriptor::of_group(&g),
                        "functor": f.name(),
                        "basis": items,
                    }));
                }
                _ => {
                    for &(c, b) in &basis {
                        let mut gen = PlusElement::zero(&g);
                        gen.add_term((c, b), 1);
                        println!("{}", render_plus(f.as_ref(), &gen)?);
                    }
                }
            }
            return Ok(0);
        }
        PlusOp::Mult => {
            let g = group_from_spec(need(group, "--group", "plus --op mult")?)?;
            let a = parse_plus(f.as_ref(), &g, need(x, "--x", "plus --op mult")?)?;
            let b = parse_plus(f.as_ref(), &g, need(y, "--y", "plus --op mult")?)?;
            out = plus_mult(f.as_ref(), &a, &b)?;
        }
        PlusOp::Act => {
            let mut cache = GroupCache::default();
            let u = parse_biset_expr(&mut cache, need(biset, "--biset", "plus --op act")?)?;
            let a = parse_plus(f.as_ref(), u.right(), need(x, "--x", "plus --op act")?)?;
            out = plus_act(f.as_ref(), &u, &a)?;
        }
    }
    match format {
        Format::Json => print_value(&plus_to_json(f.as_ref(), &out)?),
        _ => println!("{}", render_plus(f.as_ref(), &out)?),
    }
    Ok(0)
}

fn cmd_ghost(
    group: Option<&str>,
    functor: &str,
    op: GhostOp,
    x: Option<&str>,
    y: Option<&str>,
    biset: Option<&str>,
    format: Format,
) -> Result<i32> {
    let f = functor_from_selector(functor)?;
    let out: GhostElement<i64>;
    match op {
        GhostOp::Unit => {
            let g = group_from_spec(need(group, "--group", "ghost --op unit")?)?;
            out = GhostElement::unit(f.as_ref(), &g)?;
        }
        GhostOp::Expand => {
            let g = group_from_spec(need(group, "--group", "ghost --op expand")?)?;
            let v = parse_ghost(f.as_ref(), &g, need(x, "--x", "ghost --op expand")?)?;
            let table = ghost_expand(f.as_ref(), &v)?;
            let lat = lattice_of(&g);
            match format {
                Format::Json => {
                    let rows: Vec<Value> = (0..lat.len() as u32)
                        .map(|i| json!({ "entry": i, "value": table[i as usize] }))
                        .collect();
                    print_value(&json!({
                        "schema": SCHEMA,
                        "group": GroupDescriptor::of_group(&g),
                        "functor": f.name(),
                        "expanded": rows,
                    }));
                }
                _ => {
                    for (i, row) in table.iter().enumerate() {
                        println!(
                            "{i}\t{}",
                            row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                        );
                    }
                }
            }
            return Ok(0);
        }
        GhostOp::Mult => {
            let g = group_from_spec(need(group, "--group", "ghost --op mult")?)?;
            let a = parse_ghost(f.as_ref(), &g, need(x, "--x", "ghost --op mult")?)?;
            let b = parse_ghost(f.as_ref(), &g, need(y, "--y", "ghost --op mult")?)?;
            out = ghost_mult(f.as_ref(), &a, &b)?;
        }
        GhostOp::Act => {
            let mut cache = GroupCache::default();
            let u = parse_biset_expr(&mut cache, need(biset, "--biset", "ghost --op act")?)?;
            let a = parse_ghost(f.as_ref(), u.right(), need(x, "--x", "ghost --op act")?)?;
            out = ghost_act(f.as_ref(), &u, &a)?;
        }
    }
    match format {
        Format::Json => print_value(&ghost_to_json(f.as_ref(), &out)?),
        _ => println!("{}", render_ghost(&out)),
    }
    Ok(0)
}

fn cmd_marks(spec: &str, of: Option<&str>, functor: &str, format: Format) -> Result<i32> {
    let g = group_from_spec(spec)?;
    if let Some(literal) = of {
        let f = functor_from_selector(functor)?;
        let x = parse_plus(f.as_ref(), &g, literal)?;
        let y = mark(f.as_ref(), &x)?;
        match format {
            Format::Json => print_value(&ghost_to_json(f.as_ref(), &y)?),
            _ => println!("{}", render_ghost(&y)),
        }
        return Ok(0);
    }
    let rows = marks_table(&g)?;
    let lat = lattice_of(&g);
    let reps: Vec<u32> = (0..lat.num_classes() as u32).map(|c| lat.class(c).rep()).collect();
    match format {
        Format::Json => {
            let classes: Vec<Value> = reps
                .iter()
                .map(|&r| json!({ "rep": r, "order": lat.entry(r).order() }))
                .collect();
            print_value(&json!({
                "schema": SCHEMA,
                "group": GroupDescriptor::of_group(&g),
                "classes": classes,
                "rows": rows,
            }));
        }
        Format::Tsv => {
            for row in &rows {
                println!(
                    "{}",
                    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\t")
                );
            }
        }
        Format::Text => {
            println!(
                "table of marks of {} (rows/columns = subgroup classes, reps {})",
                group_name(&g),
                reps.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ")
            );
            for row in &rows {
                println!(
                    "{}",
                    row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("\t")
                );
            }
        }
    }
    Ok(0)
}

fn cmd_unmark(
    group: Option<&str>,
    functor: &str,
    values: Option<&str>,
    json_text: Option<&str>,
    format: Format,
) -> Result<i32> {
    let (f, y) = if let Some(text) = json_text {
        let v: Value = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("bad ghost JSON: {e}")))?;
        let selector = v
            .get("functor")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("ghost JSON is missing \"functor\"".into()))?;
        let f = functor_from_selector(selector)?;
        let y = ghost_from_json(f.as_ref(), &v)?;
        (f, y)
    } else {
        let g = group_from_spec(need(group, "--group", "unmark")?)?;
        let f = functor_from_selector(functor)?;
        let y = parse_ghost(f.as_ref(), &g, need(values, "--values", "unmark")?)?;
        (f, y)
    };
    let x = mobius_inverse(f.as_ref(), &y)?;
    match format {
        Format::Json => print_value(&plus_to_json(f.as_ref(), &x)?),
        _ => println!("{}", render_plus(f.as_ref(), &x)?),
    }
    Ok(0)
}

fn cmd_species(spec: &str, functor: &str, format: Format) -> Result<i32> {
    let g = group_from_spec(spec)?;
    let f = functor_from_selector(functor)?;
    let (species, basis, matrix) = evaluation_matrix(f.as_ref(), &g)?;
    let column_names: Vec<String> = basis
        .iter()
        .map(|&(c, b)| {
            let mut gen = PlusElement::zero(&g);
            gen.add_term((c, b), 1);
            render_plus(f.as_ref(), &gen)
        })
        .collect::<Result<_>>()?;
    match format {
        Format::Json => {
            let rows: Vec<Value> = species
                .iter()
                .zip(&matrix)
                .map(|(s, row)| {
                    json!({
                        "label": s.label(),
                        "conductor": s.conductor(),
                        "values": row.iter().map(|v| v.render()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            print_value(&json!({
                "schema": SCHEMA,
                "group": GroupDescriptor::of_group(&g),
                "functor": f.name(),
                "columns": column_names,
                "species": rows,
            }));
        }
        _ => {
            println!(
                "species of F+({}) with {}: {} rows",
                group_name(&g),
                f.name(),
                species.len()
            );
            println!("columns: {}", column_names.join(" "));
            for (s, row) in species.iter().zip(&matrix) {
                println!(
                    "{}\tconductor {}\t{}",
                    s.label(),
                    s.conductor(),
                    row.iter().map(|v| v.render()).collect::<Vec<_>>().join("\t")
                );
            }
        }
    }
    Ok(0)
}

fn parse_group_list(text: &str) -> Result<Vec<PermGroup>> {
    let mut out = Vec::new();
    for token in text.split(',') {
        let tok = token.trim();
        if tok.is_empty() {
            continue;
        }
        if let Some(rest) = tok.strip_prefix("preset:upto") {
            let cap: usize = rest
                .parse()
                .map_err(|_| Error::Parse(format!("bad group list token {tok:?}")))?;
            out.extend(
                crate::group::desk_suite()
                    .into_iter()
                    .filter(|g| g.order() <= cap),
            );
        } else {
            out.push(group_from_spec(tok)?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty group list".into()));
    }
    Ok(out)
}

fn cmd_verify(
    suite: &str,
    groups: &str,
    functor: &str,
    seed: u64,
    scalars: &str,
    format: Format,
) -> Result<i32> {
    let f = functor_from_selector(functor)?;
    let gs = parse_group_list(groups)?;
    let rational = match scalars {
        "z" => false,
        "q" => true,
        other => {
            return Err(Error::Parse(format!(
                "bad --scalars {other:?} (expected z or q)"
            )))
        }
    };
    let names: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![suite]
    };
    let mut reports: Vec<SuiteReport> = Vec::new();
    for name in names {
        let r = run_suite(name, f.as_ref(), &gs, seed, rational)?;
        eprintln!("suite {}: {} ms", r.suite, r.wall_ms);
        reports.push(r);
    }
    let all_passed = reports.iter().all(|r| r.passed());
    match format {
        Format::Json => {
            print_value(&json!({ "schema": SCHEMA, "reports": reports, "passed": all_passed }));
        }
        _ => {
            for r in &reports {
                println!(
                    "suite {}: {} cases, {} failures",
                    r.suite,
                    r.cases,
                    r.failures.len()
                );
                for msg in &r.failures {
                    println!("  - {msg}");
                }
            }
            println!("{}", if all_passed { "ok" } else { "FAIL" });
        }
    }
    Ok(if all_passed { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::{constant_functor, fibered_functor};

    #[test]
    fn the_unit_literal_round_trips_through_the_renderer() {
        let g = preset("S3").unwrap();
        let f = constant_functor();
        let one: PlusElement<i64> = plus_one(&f, &g).unwrap();
        let text = render_plus(&f, &one).unwrap();
        assert_eq!(text, "[S3:1]");
        assert_eq!(parse_plus(&f, &g, &text).unwrap(), one);
        assert_eq!(render_plus(&f, &PlusElement::zero(&g)).unwrap(), "0");
    }

    #[test]
    fn literals_with_coefficients_and_fibered_labels_round_trip() {
        let g = preset("C4").unwrap();
        let f = fibered_functor(2).unwrap();
        let lat = lattice_of(&g);
        let full = lat.len() as u32 - 1;
        let mut x: PlusElement<i64> = PlusElement::zero(&g);
        x.add_term(
            canonicalize_at_entry(&f, &lat, full, lat.group_of(full), 1).unwrap(),
            -3,
        );
        x.add_term(
            canonicalize_at_entry(&f, &lat, 1, lat.group_of(1), 0).unwrap(),
            2,
        );
        let text = render_plus(&f, &x).unwrap();
        assert_eq!(parse_plus(&f, &g, &text).unwrap(), x);
    }

    #[test]
    fn ghost_rows_render_flat_for_the_constant_functor() {
        let g = preset("S3").unwrap();
        let f = constant_functor();
        let unit: GhostElement<i64> = GhostElement::unit(&f, &g).unwrap();
        assert_eq!(render_ghost(&unit), "1 1 1 1");
        assert_eq!(parse_ghost(&f, &g, "1 1 1 1").unwrap(), unit);
        assert_eq!(parse_ghost(&f, &g, "1,1,1,1").unwrap(), unit);
    }

    #[test]
    fn subgroup_locators_find_copies_and_reject_strangers() {
        let s3 = preset("S3").unwrap();
        let c2 = locate_subgroup(&s3, "C2").unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(c2.name(), Some("C2"));
        assert!(locate_subgroup(&s3, "C4").is_err());
        let by_index = locate_subgroup(&s3, "#1").unwrap();
        assert_eq!(by_index.order(), 2);
    }

    #[test]
    fn quotient_locators_find_normal_complements() {
        let s3 = preset("S3").unwrap();
        let epi = locate_quotient(&s3, "C2").unwrap();
        assert_eq!(epi.target().order(), 2);
        assert!(locate_quotient(&s3, "C3").is_err());
    }

    #[test]
    fn the_res_ind_composition_is_a_single_class_matching_the_oracle() {
        let mut cache = GroupCache::default();
        let l = parse_biset_expr(&mut cache, "res:S3>C2").unwrap();
        let r = parse_biset_expr(&mut cache, "ind:C3>S3").unwrap();
        let prod = mackey_compose(&l, &r).unwrap();
        assert_eq!(prod.num_terms(), 1);
        let (d, coeff) = prod.terms().next().unwrap();
        assert_eq!(coeff, 1);
        let mut oracle = BisetElement::zero(prod.left(), prod.right());
        for (a, ca) in l.terms() {
            for (b, cb) in r.terms() {
                oracle = oracle.add(&tensor_oracle(a, b).unwrap().scale(ca * cb)).unwrap();
            }
        }
        assert_eq!(oracle, prod);
        assert_eq!(d.order(), 1);
    }

    #[test]
    fn isomorphism_search_distinguishes_the_two_groups_of_order_four() {
        let c4 = preset("C4").unwrap();
        let v4 = preset("V4").unwrap();
        assert!(!is_isomorphic(&c4, &v4));
        assert!(is_isomorphic(&c4, &preset("C4").unwrap()));
        let d3 = preset("D3").unwrap();
        let s3 = preset("S3").unwrap();
        assert!(is_isomorphic(&d3, &s3));
    }
}
