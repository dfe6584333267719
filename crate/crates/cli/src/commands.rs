use std::fs;
use std::path::Path;

use divcss::catalog;
use divcss::construction::{
    check_proposition22, check_proposition6, check_repetition_witnesses, code_invariants, derive_t, pair_parameters,
    puncture_split, repeat_pair, systematic_form, verify_puncture, CssPair, PairParameters, Provenance,
};
use divcss::csst::{
    classify_diagonal_action, corollary22_check, corollary4_check, lemma21_check, obstruction_check, search_signature,
    theorem19_check, theorem20_check, theorem3_check, ObstructionScope, SignatureSearch,
};
use divcss::gf2::Divisibility;
use divcss::textio::{self, Signatures};
use divcss::verify::{predicted_repetition_action, simulate_diagonal_action, verify_cz, verify_h, verify_s, GateSpec};
use divcss::{BitVector, CssCode, LinearCode};
use serde::Serialize;
use serde_json::json;

use crate::report::{Digest256, Recorder, Status};

pub const DEFAULT_BUDGET: u64 = 1 << 20;

#[derive(Debug)]
pub enum CliError {
    Lib(divcss::Error),
    Usage(String),
}

impl From<divcss::Error> for CliError {
    fn from(e: divcss::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    pub fn status(&self) -> Status {
        match self {
            CliError::Lib(e) if e.is_resource() => Status::ResourceCap,
            _ => Status::UsageError,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Lib(e) if e.is_resource() => {
                format!("{e}; raise --cap, choose a smaller code, or lower p")
            }
            CliError::Lib(e) => e.to_string(),
            CliError::Usage(m) => m.clone(),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read_input(rec: &mut Recorder, path: &Path) -> CliResult<String> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    rec.inputs.push(Digest256::of(path.display().to_string(), text.as_bytes()));
    Ok(text)
}

fn exponent(d: Divisibility) -> u32 {
    match d {
        Divisibility::Exponent(m) => m,
        Divisibility::ZeroCode => 0,
    }
}

#[derive(Serialize)]
struct PairSummary<'a> {
    n: usize,
    dim_c1: usize,
    dim_c2: usize,
    k: usize,
    self_dual: bool,
    provenance: Option<&'a Provenance>,
}

fn summarize(pair: &CssPair) -> PairSummary<'_> {
    PairSummary {
        n: pair.n(),
        dim_c1: pair.c1().dim(),
        dim_c2: pair.c2().dim(),
        k: pair.k(),
        self_dual: pair.is_self_dual(),
        provenance: pair.provenance(),
    }
}

fn bracket(p: &PairParameters) -> String {
    format!("[[{}, {}, {}]] (d_X = {}, d_Z = {})", p.n, p.k, p.d, p.d_x, p.d_z)
}

pub fn catalog(rec: &mut Recorder) -> CliResult<()> {
    for entry in rec.run("catalog", catalog::catalog)? {
        rec.inputs.push(Digest256::of(format!("catalog:{}", entry.name), entry.text.as_bytes()));
        let s = entry.stated;
        let mut summary = format!("[{}, {}, {}], m = {}: {}", s.n, s.k, s.d, s.m, entry.notes);
        let pair = entry.pair.as_ref().map(summarize);
        if let Some(p) = &pair {
            summary = format!("pair n = {}, dims ({}, {}); {summary}", p.n, p.dim_c1, p.dim_c2);
        }
        rec.push(
            &format!("catalog:{}", entry.name),
            false,
            true,
            summary,
            json!({ "stated": s, "notes": entry.notes, "pair": pair }),
        );
    }
    Ok(())
}

fn load_source(rec: &mut Recorder, source: &str) -> CliResult<(LinearCode, String)> {
    if catalog::names().contains(&source) {
        let entry = catalog::entry(source)?;
        rec.inputs.push(Digest256::of(format!("catalog:{source}"), entry.text.as_bytes()));
        return Ok((entry.code, source.to_string()));
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(CliError::Usage(format!(
            "{source:?} is neither a catalog entry ({}) nor a file",
            catalog::names().join(", ")
        )));
    }
    let text = read_input(rec, path)?;
    let name = path.file_stem().map_or_else(|| source.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((textio::read_code(&text)?, name))
}

pub fn construct(rec: &mut Recorder, source: &str, t: Option<usize>, p: u32, out: Option<&Path>) -> CliResult<()> {
    let (code, name) = load_source(rec, source)?;
    let m = exponent(rec.run("source", || code.divisibility())?);
    if m < 2 {
        return Err(CliError::Usage(format!(
            "source is only 2^{m}-divisible; the construction needs m >= 2"
        )));
    }
    let inv = rec.run("source", || code_invariants(&code))?;
    rec.push(
        "source",
        false,
        true,
        format!("[{}, {}, {}], dual distance {}, 2^{m}-divisible", code.n(), inv.k, inv.d, inv.d_dual),
        json!({ "n": code.n(), "k": inv.k, "d": inv.d, "d_dual": inv.d_dual, "m": m }),
    );
    let t = match t {
        Some(t) => t,
        None => derive_t(&code)?,
    };

    let sf = rec.run("proposition6", || systematic_form(&code))?;
    let prop6 = rec.run("proposition6", || check_proposition6(&sf.redundancy, m));
    rec.push(
        "proposition6",
        true,
        prop6.passed(),
        format!("{} congruences on the redundancy block, {} violated", prop6.checks, prop6.violations.len()),
        &prop6,
    );

    let base = rec.run("puncture", || puncture_split(&code, t))?;
    let puncture = rec.run("puncture", || verify_puncture(&code, &base))?;
    rec.push(
        "puncture",
        true,
        puncture.passed(),
        format!(
            "t = {t}: dims ({}, {}), d(C1) = {} >= t, d(C2-dual) = {} >= t, C2 = C1-dual: {}",
            puncture.dim_c1, puncture.dim_c2, puncture.min_weight_c1, puncture.min_weight_c2_dual, puncture.c2_equals_c1_dual
        ),
        &puncture,
    );

    let prop22 = rec.run("proposition22", || check_proposition22(&base, m))?;
    rec.push(
        "proposition22",
        true,
        prop22.passed(),
        format!("{} congruences on the punctured pair, {} violated", prop22.checks, prop22.violations.len()),
        &prop22,
    );

    let base_params = rec.run("parameters_base", || pair_parameters(&base))?;
    rec.push(
        "parameters_base",
        true,
        base_params.n == code.n() - t && base_params.k == t && base_params.d >= t,
        format!("{} with d >= t = {t}", bracket(&base_params)),
        base_params,
    );

    let provenance = Provenance {
        source: Some(name),
        divisibility: Some(m),
        ..base.provenance().cloned().unwrap_or_default()
    };
    let pair = repeat_pair(&base.clone().with_provenance(provenance), p)?;
    if p > 0 {
        let witnesses = rec.run("repetition_witnesses", || check_repetition_witnesses(&base, p))?;
        rec.push(
            "repetition_witnesses",
            true,
            witnesses,
            "repeated C2 words lie in C2^(p), padded C1-dual words lie in (C1^(p))-dual",
            json!({ "p": p }),
        );
        match rec.run("parameters", || pair_parameters(&pair)) {
            Ok(params) => {
                let law = params.d_x == base_params.d_x << p && params.d_z == base_params.d_z;
                rec.push(
                    "parameters",
                    true,
                    law && params.k == t && params.n == (code.n() - t) << p && params.d >= t,
                    format!("{}; d_X = 2^p d_X(base), d_Z = d_Z(base): {law}", bracket(&params)),
                    json!({ "exact": true, "parameters": params }),
                );
            }
            Err(e) if e.is_resource() => {
                let d_x = base_params.d_x << p;
                let d = d_x.min(base_params.d_z);
                rec.push(
                    "parameters",
                    false,
                    true,
                    format!(
                        "[[{}, {t}, {d}]] from the repetition law (exact enumeration over the cap)",
                        pair.n()
                    ),
                    json!({
                        "exact": false,
                        "parameters": PairParameters { n: pair.n(), k: t, d_x, d_z: base_params.d_z, d },
                    }),
                );
            }
            Err(e) => return Err(e.into()),
        }
    }

    let text = textio::write_pair(&pair, &Signatures::default());
    let mut data = json!({ "pair": summarize(&pair) });
    match out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            rec.outputs.push(Digest256::of(path.display().to_string(), text.as_bytes()));
        }
        None => data["file"] = json!(text),
    }
    rec.push(
        "output",
        false,
        true,
        format!("n = {}, k = {}, p = {p}", pair.n(), pair.k()),
        data,
    );
    Ok(())
}

/// `--sz` argument: a vector, or a budgeted search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SzArg {
    Vector(BitVector),
    Search(Option<u64>),
}

pub fn parse_sz(s: &str) -> Result<SzArg, String> {
    if let Some(rest) = s.strip_prefix("search") {
        return match rest.strip_prefix(':') {
            None if rest.is_empty() => Ok(SzArg::Search(None)),
            Some(b) => b.parse().map(|b| SzArg::Search(Some(b))).map_err(|_| format!("bad search budget {b:?}")),
            None => Err(format!("bad --sz value {s:?}")),
        };
    }
    s.parse().map(SzArg::Vector).map_err(|_| format!("--sz must be a 0/1 vector or search[:budget], got {s:?}"))
}

fn signature(pair: &CssPair, given: Option<BitVector>, stored: Option<BitVector>) -> CliResult<BitVector> {
    let s = given.or(stored).unwrap_or_else(|| BitVector::zeros(pair.n()));
    if s.len() != pair.n() {
        return Err(CliError::Usage(format!("s_Z has length {}, the pair has n = {}", s.len(), pair.n())));
    }
    Ok(s)
}

fn signed_code(pair: &CssPair, sig: &Signatures, s_z: BitVector) -> CliResult<CssCode> {
    let s_x = sig.s_x.clone().unwrap_or_else(|| BitVector::zeros(pair.n()));
    Ok(CssCode::new(pair.clone(), s_x, s_z)?)
}

fn signature_checks(rec: &mut Recorder, css: &CssCode) -> CliResult<()> {
    let t3 = rec.run("css_t", || theorem3_check(css))?;
    let c4 = rec.run("coset_form", || corollary4_check(css))?;
    let l21 = rec.run("basis_form", || lemma21_check(css));
    rec.push(
        "css_t",
        true,
        t3.verdict,
        format!("s_Z = {}: CSS-T {}", css.s_z(), t3.verdict),
        &t3,
    );
    rec.push("coset_form", false, c4.verdict, format!("coset-representative form: {}", c4.verdict), &c4);
    rec.push("basis_form", false, l21.verdict, format!("basis-level form: {}", l21.verdict), &l21);
    let agree = t3.verdict == c4.verdict && c4.verdict == l21.verdict;
    rec.push(
        "characterizations_agree",
        true,
        agree,
        format!("all-pairs {}, coset {}, basis {}", t3.verdict, c4.verdict, l21.verdict),
        json!({ "all_pairs": t3.verdict, "coset": c4.verdict, "basis": l21.verdict }),
    );
    if !t3.verdict {
        return Ok(());
    }
    let t19 = rec.run("t_identity", || theorem19_check(css))?;
    rec.push("t_identity", false, t19.verdict, format!("transversal T is the logical identity: {}", t19.verdict), &t19);
    let t20 = rec.run("t_logical_t", || theorem20_check(css))?;
    rec.push("t_logical_t", false, t20.verdict, format!("transversal T is logical T: {}", t20.verdict), &t20);
    let action = rec.run("t_action", || classify_diagonal_action(css, 2))?;
    let name = action.class.map_or_else(|| "not logical".into(), |c| c.name());
    rec.push("t_action", false, action.logical, format!("transversal T acts as {name}"), &action);
    Ok(())
}

pub struct CheckArgs<'a> {
    pub pair: &'a Path,
    pub sz: Option<SzArg>,
    pub budget: Option<u64>,
    pub cursor: u64,
    pub broad: bool,
}

pub fn check(rec: &mut Recorder, args: &CheckArgs) -> CliResult<()> {
    let text = read_input(rec, args.pair)?;
    let (pair, sig) = textio::read_pair(&text)?;
    rec.push("pair", false, true, format!("n = {}, k = {}", pair.n(), pair.k()), summarize(&pair));
    let c22 = rec.run("product_condition", || corollary22_check(&pair));
    rec.push("product_condition", false, c22, format!("C2*C1 inside C1-dual: {c22}"), json!({ "holds": c22 }));

    let budget = match args.sz {
        Some(SzArg::Search(b)) => b.or(args.budget).unwrap_or(DEFAULT_BUDGET),
        Some(SzArg::Vector(ref v)) => return signature_checks(rec, &signed_code(&pair, &sig, signature(&pair, Some(v.clone()), None)?)?),
        None => return signature_checks(rec, &signed_code(&pair, &sig, signature(&pair, None, sig.s_z.clone())?)?),
    };

    let scope = if args.broad { ObstructionScope::Broad } else { ObstructionScope::Basis };
    let certificate = rec.run("obstruction", || obstruction_check(&pair, scope))?;
    rec.push(
        "obstruction",
        false,
        certificate.is_some(),
        match &certificate {
            Some(c) => format!(
                "{}*{} = {}*{} + {}*{} with odd quad weight {}",
                c.labels.u, c.labels.y, c.labels.pairs[0][0], c.labels.pairs[0][1], c.labels.pairs[1][0], c.labels.pairs[1][1], c.quad_weight
            ),
            None => "no certificate".into(),
        },
        json!({ "scope": scope, "certificate": certificate }),
    );
    let search = rec.run("signature_search", || search_signature(&pair, budget, args.cursor));
    let found = matches!(search, SignatureSearch::Found { .. });
    let summary = match (&search, &certificate) {
        (SignatureSearch::Found { s_z, tried }, _) => format!("found s_Z = {s_z} after {tried} candidates"),
        (_, Some(_)) => "nonexistence certified".into(),
        (SignatureSearch::Exhausted { tried, .. }, None) => format!("no signature exists ({tried} candidates, exhaustive)"),
        (SignatureSearch::Inconclusive { tried, next_cursor }, None) => {
            format!("inconclusive after {tried} candidates; resume with --cursor {next_cursor}")
        }
    };
    rec.push("signature_search", true, found, summary.clone(), json!({ "budget": budget, "cursor": args.cursor, "result": &search }));
    match search {
        SignatureSearch::Found { s_z, .. } => signature_checks(rec, &signed_code(&pair, &sig, s_z)?),
        SignatureSearch::Inconclusive { .. } if certificate.is_none() => {
            rec.set_status(Status::ResourceCap, summary);
            Ok(())
        }
        _ => Ok(()),
    }
}

pub fn parse_gate(s: &str) -> Result<GateSpec, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "t" => Ok(GateSpec::T),
        "s" => Ok(GateSpec::S),
        "h" => Ok(GateSpec::H),
        "cz" => Ok(GateSpec::CzTwoBlock),
        other => other
            .strip_prefix("rz:")
            .and_then(|l| l.parse().ok())
            .map(|l| GateSpec::Rz { l })
            .ok_or_else(|| format!("unknown gate {s:?}; expected rz:<l>, t, s, h or cz")),
    }
}

fn gate_id(g: GateSpec) -> String {
    match g {
        GateSpec::Rz { l } => format!("rz:{l}"),
        GateSpec::T => "t".into(),
        GateSpec::S => "s".into(),
        GateSpec::H => "h".into(),
        GateSpec::CzTwoBlock => "cz".into(),
    }
}

pub struct VerifyArgs<'a> {
    pub pair: &'a Path,
    pub gates: &'a [GateSpec],
    pub sz: Option<BitVector>,
    pub tol: f64,
}

fn diagonal_check(rec: &mut Recorder, id: &str, css: &CssCode, l: u32) -> CliResult<()> {
    let action = rec.run(id, || classify_diagonal_action(css, l))?;
    let sim = rec.run(id, || simulate_diagonal_action(css, l))?;
    let modulus = 2u64 << l;
    let agree = action.logical == sim.is_diagonal()
        && (!action.logical
            || sim.exponents.iter().zip(&action.phases).all(|(e, c)| *e == Some((action.global + c) % modulus)));
    // Prediction from the construction record, for positively signed codes.
    let prediction = css
        .pair()
        .provenance()
        .filter(|_| css.s_z().is_zero())
        .and_then(|prov| prov.divisibility.map(|m| (m, prov.p)))
        .and_then(|(m, p)| predicted_repetition_action(m, p, l).ok());
    let matches_prediction = prediction.is_none_or(|p| action.class == Some(p));
    let gate = format!("transversal R_Z(π/{})", 1u64 << l);
    let mut summary = match action.class {
        Some(c) => format!("{gate} acts as {}; simulation agrees: {agree}", c.name()),
        None => format!("{gate} is not a logical gate; simulation agrees: {agree}"),
    };
    if let Some(p) = prediction {
        summary.push_str(&format!("; predicted {}", p.name()));
    }
    rec.push(
        id,
        true,
        action.logical && agree && matches_prediction,
        summary,
        json!({ "classification": action, "simulation": sim, "prediction": prediction }),
    );
    Ok(())
}

pub fn verify(rec: &mut Recorder, args: &VerifyArgs) -> CliResult<()> {
    let text = read_input(rec, args.pair)?;
    let (pair, sig) = textio::read_pair(&text)?;
    let s_z = signature(&pair, args.sz.clone(), sig.s_z.clone())?;
    let css = signed_code(&pair, &sig, s_z)?;
    rec.push("pair", false, true, format!("n = {}, k = {}", pair.n(), pair.k()), summarize(&pair));
    for &gate in args.gates {
        let id = gate_id(gate);
        match gate {
            GateSpec::H | GateSpec::S | GateSpec::CzTwoBlock => {
                let outcome = rec.run(&id, || match gate {
                    GateSpec::S => verify_s(&css),
                    GateSpec::H => verify_h(&css, args.tol),
                    _ => verify_cz(&css),
                });
                let outcome = match outcome {
                    Err(divcss::Error::InvalidInput(m)) => divcss::verify::CheckOutcome { pass: false, detail: m },
                    other => other?,
                };
                rec.push(&id, true, outcome.pass, outcome.detail.clone(), &outcome);
            }
            GateSpec::Rz { .. } | GateSpec::T => {
                diagonal_check(rec, &id, &css, gate.rotation_level().expect("diagonal gate"))?;
            }
        }
    }
    Ok(())
}
