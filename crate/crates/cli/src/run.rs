//! Command dispatch and report text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use obcalc_core::binding_sum::{
    binding_sum_3d, binding_sum_symbolic, format_word, sum_all_pairs, SumCertificate, SumSite, WordVariant, SUM_SIGN,
};
use obcalc_core::contact_verify::{
    default_lutz_pair, verify_f1_nontangent, verify_framing_homotopy, verify_pushoff_contact, FramingGrid,
    PositivityReport, PushOffProfile, DEFAULT_TOL,
};
use obcalc_core::openbook::{fibration_oracle_h1, Descriptor, OpenBook3, SymbolicOpenBook};
use obcalc_core::surface::{content, CombSurface, TwistWord};
use serde::Serialize;
use thiserror::Error;

use crate::doc::{print_word, BookDecl, Doc, Ref, SymbolicDecl, VerifyDecl, VerifyKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Invariants,
    Sum,
    OracleCompare,
    ContactVerify,
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub json: bool,
}

/// Report text and whether every check passed.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{context}: {source}")]
    Core {
        context: String,
        source: obcalc_core::Error,
    },
    #[error("{0}")]
    Usage(String),
}

trait Context<T> {
    fn ctx(self, context: impl FnOnce() -> String) -> Result<T, RunError>;
}

impl<T> Context<T> for obcalc_core::Result<T> {
    fn ctx(self, context: impl FnOnce() -> String) -> Result<T, RunError> {
        self.map_err(|source| RunError::Core { context: context(), source })
    }
}

pub fn run(doc: &Doc, cmd: Command, opts: &Options) -> Result<Outcome, RunError> {
    match cmd {
        Command::Invariants => invariants(doc, opts),
        Command::Sum => sum(doc, opts),
        Command::OracleCompare => oracle_compare(doc, opts),
        Command::ContactVerify => contact_verify(doc, opts),
    }
}

/// Builds the open book of a declaration on the standard page.
pub fn build_book(decl: &BookDecl) -> obcalc_core::Result<OpenBook3> {
    let page = CombSurface::standard_with_labels(decl.genus, &decl.labels)?;
    let word = TwistWord::resolve(&page, &decl.word)?;
    OpenBook3::new(page, word)
}

fn build_symbolic(decl: &SymbolicDecl) -> obcalc_core::Result<SymbolicOpenBook> {
    let mut s = SymbolicOpenBook::new(
        decl.dim,
        Descriptor { name: decl.page.clone(), chi: decl.page_chi },
        Descriptor { name: decl.binding.clone(), chi: decl.binding_chi },
    )?;
    if let Some(m) = &decl.monodromy {
        s.monodromy = m.clone();
    }
    s.manifold = decl.manifold.clone();
    Ok(s)
}

fn symbolic_decl(name: &str, s: &SymbolicOpenBook) -> SymbolicDecl {
    SymbolicDecl {
        name: name.to_string(),
        dim: s.dim,
        page_chi: s.page.chi,
        page: s.page.name.clone(),
        binding_chi: s.binding.chi,
        binding: s.binding.name.clone(),
        manifold: s.manifold.clone(),
        monodromy: Some(s.monodromy.clone()),
        pos: Default::default(),
    }
}

/// Re-expresses a connected open book on the standard page with its labels.
/// A twist along `m·c′` with `c′` primitive acts on homology as the twist
/// along `c′` raised to `m²`, and is printed that way.
pub fn book_decl(name: &str, ob: &OpenBook3) -> obcalc_core::Result<BookDecl> {
    let form = ob.page.standard_form()?;
    let mut word = Vec::new();
    for t in &ob.monodromy.twists {
        let v = form.map(&t.class);
        let m = content(&v);
        if m.is_zero() {
            continue;
        }
        let primitive: Vec<BigInt> = v.iter().map(|x| x.div_floor(&m)).collect();
        let m2: i64 = (&m * &m).try_into().map_err(|_| obcalc_core::Error::NotPrimitive(t.curve.to_string()))?;
        word.push((form.target.name_class(&primitive), t.power * m2));
    }
    Ok(BookDecl { name: name.to_string(), genus: form.genus, labels: form.labels, word, pos: Default::default() })
}

#[derive(Serialize)]
struct Invariants {
    name: String,
    kind: &'static str,
    chi: i64,
    boundary: Option<usize>,
    monodromy: String,
    h0: Option<String>,
    h1: Option<String>,
    h2: Option<String>,
    h3: Option<String>,
    manifold: Option<String>,
    note: Option<String>,
}

fn invariants(doc: &Doc, opts: &Options) -> Result<Outcome, RunError> {
    let mut records = Vec::new();
    for decl in doc.books() {
        let ob = build_book(decl).ctx(|| format!("open book `{}`", decl.name))?;
        let h = ob.manifold_h_star().ctx(|| format!("open book `{}`", decl.name))?;
        records.push(Invariants {
            name: decl.name.clone(),
            kind: "openbook",
            chi: ob.euler_characteristic(),
            boundary: Some(decl.labels.len()),
            monodromy: print_word(&decl.word),
            h0: Some(h.h0.to_string()),
            h1: Some(h.h1.to_string()),
            h2: Some(h.h2.to_string()),
            h3: Some(h.h3.to_string()),
            manifold: None,
            note: None,
        });
    }
    for decl in doc.symbolic() {
        let s = build_symbolic(decl).ctx(|| format!("symbolic book `{}`", decl.name))?;
        let note = s.manifold_h1().err().map(|e| e.to_string());
        records.push(Invariants {
            name: decl.name.clone(),
            kind: "symbolic",
            chi: s.page.chi,
            boundary: None,
            monodromy: s.monodromy.clone(),
            h0: None,
            h1: None,
            h2: None,
            h3: None,
            manifold: s.manifold.clone(),
            note,
        });
    }
    if opts.json {
        return Ok(Outcome { text: json(&records), ok: true });
    }
    let mut out = String::new();
    for r in &records {
        writeln!(out, "{} {}", r.kind, r.name).unwrap();
        writeln!(out, "  chi = {}", r.chi).unwrap();
        if let Some(b) = r.boundary {
            writeln!(out, "  boundary = {b}").unwrap();
        }
        writeln!(out, "  monodromy = \"{}\"", r.monodromy).unwrap();
        for (k, v) in [("H0", &r.h0), ("H1", &r.h1), ("H2", &r.h2), ("H3", &r.h3)] {
            if let Some(v) = v {
                writeln!(out, "  {k} = {v}").unwrap();
            }
        }
        if let Some(m) = &r.manifold {
            writeln!(out, "  manifold = {m}").unwrap();
        }
        if let Some(n) = &r.note {
            writeln!(out, "  {n}").unwrap();
        }
    }
    Ok(Outcome { text: out, ok: true })
}

fn json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("reports serialize");
    s.push('\n');
    s
}

/// Working set of the `sum` command. `alias` maps each declared
/// `(book, label)` to its current book and label.
struct SumState {
    books: BTreeMap<String, OpenBook3>,
    symbolic: BTreeMap<String, SymbolicOpenBook>,
    alias: BTreeMap<(String, String), (String, String)>,
    order: Vec<String>,
}

impl SumState {
    fn resolve(&self, r: &Ref) -> Result<(String, String), RunError> {
        let label = r.label.clone().unwrap_or_default();
        self.alias
            .get(&(r.name.clone(), label))
            .or_else(|| self.alias.get(&(r.name.clone(), String::new())))
            .cloned()
            .ok_or_else(|| RunError::Usage(format!("{}: `{r}` was consumed by an earlier sum", r.pos)))
    }

    fn rename_book(&mut self, old: &str, new: &str, prefix: bool) {
        for v in self.alias.values_mut() {
            if v.0 == old {
                v.0 = new.to_string();
                if prefix {
                    v.1 = format!("{old}.{}", v.1);
                }
            }
        }
    }
}

#[derive(Serialize)]
struct SumRecord {
    site: String,
    result: String,
    certificate: Option<SumCertificate>,
    chi_before: i64,
    chi_after: i64,
}

#[derive(Serialize)]
struct SumReport {
    sums: Vec<SumRecord>,
    books: Vec<String>,
}

fn sum(doc: &Doc, opts: &Options) -> Result<Outcome, RunError> {
    let mut st = SumState { books: BTreeMap::new(), symbolic: BTreeMap::new(), alias: BTreeMap::new(), order: vec![] };
    for d in doc.books() {
        st.books.insert(d.name.clone(), build_book(d).ctx(|| format!("open book `{}`", d.name))?);
        for l in &d.labels {
            st.alias.insert((d.name.clone(), l.clone()), (d.name.clone(), l.clone()));
        }
        st.order.push(d.name.clone());
    }
    for d in doc.symbolic() {
        st.symbolic.insert(d.name.clone(), build_symbolic(d).ctx(|| format!("symbolic book `{}`", d.name))?);
        st.alias.insert((d.name.clone(), String::new()), (d.name.clone(), String::new()));
        st.order.push(d.name.clone());
    }
    let mut records = Vec::new();
    for (a, b) in doc.sums() {
        let site_text = format!("{a} {b}");
        let (na, la) = st.resolve(a)?;
        let (nb, lb) = st.resolve(b)?;
        if st.symbolic.contains_key(&na) {
            let (x, y) = (&st.symbolic[&na], &st.symbolic[&nb]);
            let s = binding_sum_symbolic(x, y).ctx(|| format!("sum {site_text}"))?;
            let name = format!("{na}_{nb}");
            records.push(SumRecord {
                site: site_text,
                result: name.clone(),
                certificate: None,
                chi_before: x.page.chi + y.page.chi,
                chi_after: s.page.chi,
            });
            st.symbolic.remove(&na);
            st.symbolic.remove(&nb);
            st.rename_book(&na, &name, false);
            st.rename_book(&nb, &name, false);
            replace_order(&mut st.order, &na, &nb, &name);
            st.symbolic.insert(name, s);
            continue;
        }
        let (name, ob, site) = if na == nb {
            (na.clone(), st.books[&na].clone(), SumSite::new(la, lb))
        } else {
            let name = format!("{na}_{nb}");
            let ob = st.books[&na].disjoint_union(&na, &st.books[&nb], &nb).ctx(|| format!("sum {site_text}"))?;
            (name, ob, SumSite::new(format!("{na}.{la}"), format!("{nb}.{lb}")))
        };
        let (summed, cert) = binding_sum_3d(&ob, &site).ctx(|| format!("sum {site_text}"))?;
        if na != nb {
            st.books.remove(&na);
            st.books.remove(&nb);
            st.rename_book(&na, &name, true);
            st.rename_book(&nb, &name, true);
            replace_order(&mut st.order, &na, &nb, &name);
        }
        records.push(SumRecord {
            site: site_text,
            result: name.clone(),
            chi_before: cert.chi_before,
            chi_after: cert.chi_after,
            certificate: Some(cert),
        });
        st.books.insert(name, summed);
    }
    let mut printed = Vec::new();
    for name in &st.order {
        if let Some(ob) = st.books.get(name) {
            let text = match book_decl(name, ob) {
                Ok(d) => {
                    let h1 = ob.manifold_h1().ctx(|| format!("open book `{name}`"))?;
                    format!("# H1 = {h1}\n{d}")
                }
                Err(obcalc_core::Error::Disconnected) => format!(
                    "# `{name}` has a disconnected page ({} components) and is not printed",
                    ob.page.components().len()
                ),
                Err(e) => return Err(RunError::Core { context: format!("open book `{name}`"), source: e }),
            };
            printed.push(text);
        } else if let Some(s) = st.symbolic.get(name) {
            printed.push(symbolic_decl(name, s).to_string());
        }
    }
    if opts.json {
        return Ok(Outcome { text: json(&SumReport { sums: records, books: printed }), ok: true });
    }
    let mut out = String::new();
    for r in &records {
        writeln!(out, "# sum {} -> {}", r.site, r.result).unwrap();
        writeln!(out, "#   chi {} -> {}", r.chi_before, r.chi_after).unwrap();
        if let Some(c) = &r.certificate {
            writeln!(out, "#   glue circle {}", c.glue_label).unwrap();
            writeln!(out, "#   handles {} {}", c.handles[0], c.handles[1]).unwrap();
            writeln!(out, "#   sign {:+}", c.sign).unwrap();
            writeln!(out, "#   appended word \"{}\"", format_word(&c.word)).unwrap();
            for d in &c.dropped {
                writeln!(out, "#   dropped {d}").unwrap();
            }
        }
    }
    for p in printed {
        writeln!(out, "{p}").unwrap();
    }
    Ok(Outcome { text: out, ok: true })
}

fn replace_order(order: &mut Vec<String>, a: &str, b: &str, name: &str) {
    if let Some(i) = order.iter().position(|x| x == a) {
        order[i] = name.to_string();
    }
    order.retain(|x| x != b);
}

#[derive(Serialize)]
struct Comparison {
    books: [String; 2],
    matching: Vec<(String, String)>,
    binding_sum_h1: String,
    fibration_h1: String,
    matches: bool,
}

fn oracle_compare(doc: &Doc, opts: &Options) -> Result<Outcome, RunError> {
    let mut groups: Vec<((String, String), Vec<(String, String)>)> = Vec::new();
    for (a, b) in doc.sums() {
        if doc.symbolic().any(|s| s.name == a.name) {
            continue;
        }
        if a.name == b.name {
            return Err(RunError::Usage(format!(
                "{}: the fibration oracle needs sums between two different books",
                a.pos
            )));
        }
        let key = (a.name.clone(), b.name.clone());
        let pair = (a.label.clone().unwrap_or_default(), b.label.clone().unwrap_or_default());
        match groups.iter_mut().find(|g| g.0 == key) {
            Some(g) => g.1.push(pair),
            None => groups.push((key, vec![pair])),
        }
    }
    if groups.is_empty() {
        let books: Vec<&BookDecl> = doc.books().take(2).collect();
        if books.len() < 2 {
            return Err(RunError::Usage("oracle-compare needs two open books".into()));
        }
        let matching = books[0].labels.iter().cloned().zip(books[1].labels.iter().cloned()).collect();
        groups.push(((books[0].name.clone(), books[1].name.clone()), matching));
    }
    let mut results = Vec::new();
    for ((a, b), matching) in groups {
        let find = |n: &str| doc.books().find(|d| d.name == n).expect("references are checked by the parser");
        let ob0 = build_book(find(&a)).ctx(|| format!("open book `{a}`"))?;
        let ob1 = build_book(find(&b)).ctx(|| format!("open book `{b}`"))?;
        let context = || format!("oracle-compare {a} {b}");
        let summed = sum_all_pairs(&ob0, &ob1, &matching, SUM_SIGN, WordVariant::WithOldParallels).ctx(context)?;
        let lhs = summed.manifold_h1().ctx(context)?;
        let rhs = fibration_oracle_h1(&ob0, &ob1, &matching).ctx(context)?;
        results.push(Comparison {
            books: [a, b],
            matching,
            binding_sum_h1: lhs.to_string(),
            fibration_h1: rhs.to_string(),
            matches: lhs == rhs,
        });
    }
    let ok = results.iter().all(|r| r.matches);
    if opts.json {
        return Ok(Outcome { text: json(&results), ok });
    }
    let mut out = String::new();
    for r in &results {
        writeln!(out, "oracle-compare {} {}", r.books[0], r.books[1]).unwrap();
        let m: Vec<String> = r.matching.iter().map(|(x, y)| format!("{}.{x}~{}.{y}", r.books[0], r.books[1])).collect();
        writeln!(out, "  matching {}", m.join(" ")).unwrap();
        writeln!(out, "  binding sum H1 = {}", r.binding_sum_h1).unwrap();
        writeln!(out, "  fibration   H1 = {}", r.fibration_h1).unwrap();
        writeln!(out, "  {}", if r.matches { "MATCH" } else { "MISMATCH" }).unwrap();
    }
    Ok(Outcome { text: out, ok })
}

const CONTACT_GRID: usize = 10_000;
const F1_GRID: usize = 2_000;
const F1_THETA: usize = 64;
const FRAMING_GRID: usize = 100_000;

fn profile(v: &VerifyDecl) -> obcalc_core::Result<PushOffProfile> {
    let d = PushOffProfile::default();
    PushOffProfile::new(
        v.get("eps1").unwrap_or(d.eps1),
        v.get("eps2").unwrap_or(d.eps2),
        v.get("eps3").unwrap_or(d.eps3),
        v.get("c").unwrap_or(d.c),
        v.get("rmax").unwrap_or(d.r_max),
    )
}

fn count(x: f64, key: &str) -> Result<usize, RunError> {
    if x >= 1.0 && x.fract() == 0.0 {
        Ok(x as usize)
    } else {
        Err(RunError::Usage(format!("`{key}` must be a positive integer, got {x}")))
    }
}

fn run_verify(v: &VerifyDecl, opts: &Options) -> Result<PositivityReport, RunError> {
    let context = || format!("verify {}", v.kind.keyword());
    let prof = profile(v).ctx(context)?;
    let tol = opts.tol.or(v.get("tol")).unwrap_or(DEFAULT_TOL);
    let grid = match (opts.grid, v.get("grid")) {
        (Some(g), _) => Some(g),
        (None, Some(g)) => Some(count(g, "grid")?),
        (None, None) => None,
    };
    match v.kind {
        VerifyKind::Contact => {
            let n = count(v.get("n").unwrap_or(2.0), "n")? as u32;
            let pair = default_lutz_pair();
            verify_pushoff_contact(&pair, &pair, &prof, n, grid.unwrap_or(CONTACT_GRID), tol).ctx(context)
        }
        VerifyKind::Framing => {
            let g = FramingGrid::with_at_least(grid.unwrap_or(FRAMING_GRID));
            verify_framing_homotopy(&prof, &g, tol).ctx(context)
        }
        VerifyKind::F1 => verify_f1_nontangent(&prof, grid.unwrap_or(F1_GRID), F1_THETA, tol).ctx(context),
    }
}

fn located(loc: &[(String, f64)]) -> String {
    loc.iter().map(|(k, v)| format!("{k}={v:.6}")).collect::<Vec<_>>().join(" ")
}

fn pass_text(p: bool) -> &'static str {
    if p {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Line-oriented text of a report.
pub fn format_report(r: &PositivityReport) -> String {
    let mut out = String::new();
    writeln!(out, "verify {}", r.name).unwrap();
    writeln!(out, "  grid {} ({} points)", r.grid, r.points).unwrap();
    writeln!(out, "  min {:.6e} at {}", r.min, located(&r.argmin)).unwrap();
    if let Some(t) = &r.terms {
        writeln!(out, "  term minima A {:.6e} B {:.6e} C {:.6e}", t.a, t.b, t.c).unwrap();
    }
    writeln!(out, "  tolerance {:.1e} margin {:.6e} {}", r.tolerance, r.margin, pass_text(r.pass)).unwrap();
    for c in &r.checks {
        writeln!(out, "  check {}: {:.6e} at {} {}", c.name, c.value, located(&c.location), pass_text(c.pass)).unwrap();
    }
    writeln!(out, "  {}", pass_text(r.all_pass())).unwrap();
    out
}

fn contact_verify(doc: &Doc, opts: &Options) -> Result<Outcome, RunError> {
    let mut decls: Vec<VerifyDecl> = doc.verifies().cloned().collect();
    if decls.is_empty() {
        decls = [VerifyKind::Contact, VerifyKind::Framing, VerifyKind::F1]
            .into_iter()
            .map(|kind| VerifyDecl { kind, params: vec![], pos: Default::default() })
            .collect();
    }
    let reports = decls.iter().map(|v| run_verify(v, opts)).collect::<Result<Vec<_>, _>>()?;
    let ok = reports.iter().all(PositivityReport::all_pass);
    if opts.json {
        return Ok(Outcome { text: json(&reports), ok });
    }
    Ok(Outcome { text: reports.iter().map(format_report).collect(), ok })
}
