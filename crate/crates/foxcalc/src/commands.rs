//! One handler per subcommand: load inputs, run the core computation,
//! build a Report. Domain failures carry machine-readable error codes.

use std::fs;
use std::path::Path;

use foxcalc_core::alexander::{
    alexander_knot, factorization_check, fibered_alexander, mapping_torus_alexander,
    SeifertCylinderInput, WirtingerInput,
};
use foxcalc_core::cylinder::{compose, parse_cylinder, AdmissiblePresentation};
use foxcalc_core::fox::fox_word;
use foxcalc_core::magnus::{
    burau, check_symplectic, gassner, magnus, sigma_matrix,
};
use foxcalc_core::nilpotent::{filtration_depth, johnson_tau};
use foxcalc_core::ring::parse_laurent;
use foxcalc_core::words::{
    fixes_boundary, parse_endomorphism, parse_presentation, parse_word, Endomorphism,
};
use foxcalc_core::Error as CoreError;
use serde_json::Value;

use crate::report::{
    diagnostics_value, int_matrix_value, matrix_lines, matrix_value, Format, Report,
};

pub enum CliError {
    Input(String),
    Domain(CoreError),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Domain(e)
    }
}

pub fn error_code(e: &CoreError) -> &'static str {
    match e {
        CoreError::RankMismatch { .. } => "RANK_MISMATCH",
        CoreError::IndexOutOfRange { .. } => "INDEX_OUT_OF_RANGE",
        CoreError::Parse { .. } => "PARSE",
        CoreError::NonPureBraid => "NON_PURE_BRAID",
        CoreError::BoundaryNotFixed => "BOUNDARY_NOT_FIXED",
        CoreError::ZeroInversion => "ZERO_INVERSION",
        CoreError::SingularMatrix => "SINGULAR_MATRIX",
        CoreError::NonMonomialDeterminant => "NON_MONOMIAL_DETERMINANT",
        CoreError::DepthTooShallow { .. } => "DEPTH_TOO_SHALLOW",
        CoreError::HomologyActionNontrivial => "HOMOLOGY_ACTION_NONTRIVIAL",
        CoreError::DegeneratePresentation(_) => "DEGENERATE_PRESENTATION",
        CoreError::NotACylinder(_) => "NOT_A_CYLINDER",
        CoreError::Rho1Inconsistent { .. } => "RHO1_INCONSISTENT",
    }
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Input(_) => "INPUT",
            CliError::Domain(e) => error_code(e),
        }
    }

    /// 2 for parse/input errors, 1 for domain errors.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Domain(CoreError::Parse { .. }) => 2,
            CliError::Domain(_) => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Input(m) => m.clone(),
            CliError::Domain(e) => e.to_string(),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => format!("error[{}]: {}", self.code(), self.message()),
            Format::Json => serde_json::json!({
                "error": { "code": self.code(), "message": self.message() }
            })
            .to_string(),
        }
    }
}

pub type CliResult = Result<Report, CliError>;

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_endomorphism(path: &Path) -> Result<Endomorphism, CliError> {
    Ok(parse_endomorphism(&read_input(path)?)?)
}

fn load_cylinder(path: &Path) -> Result<(AdmissiblePresentation, Option<Vec<i64>>), CliError> {
    Ok(parse_cylinder(&read_input(path)?)?)
}

/// Largest generator index mentioned in a word (x-name syntax).
fn infer_rank(text: &str) -> Result<u16, CliError> {
    let mut rank = 1u16;
    for token in text.split_whitespace() {
        let name = token.split('^').next().unwrap_or(token);
        if let Some(digits) = name.strip_prefix('x') {
            if let Ok(k) = digits.parse::<u16>() {
                rank = rank.max(k);
            }
        }
    }
    Ok(rank)
}

pub fn cmd_fox(word: &str, wrt: usize, rank: Option<u16>) -> CliResult {
    let rank = match rank {
        Some(r) => r,
        None => infer_rank(word)?,
    };
    let w = parse_word(word, rank)?;
    let d = fox_word(&w, wrt)?;
    let mut rep = Report::new("fox");
    rep.put("wrt", Value::from(wrt as u64));
    rep.put("element", Value::String(d.to_string()));
    rep.line(&d.to_string());
    Ok(rep)
}

pub fn cmd_magnus(path: &Path) -> CliResult {
    let phi = load_endomorphism(path)?;
    let m = magnus(&phi)?;
    let rows = m.entry_strings();
    let mut rep = Report::new("magnus");
    rep.put("matrix", matrix_value(&rows));
    rep.put("sigma", int_matrix_value(&sigma_matrix(&phi)));
    matrix_lines(&mut rep, "matrix", &rows);
    Ok(rep)
}

pub fn cmd_braid(gassner_mode: bool, strands: u16, word: &str) -> CliResult {
    let letters = word
        .split_whitespace()
        .map(|t| {
            t.parse::<i32>()
                .map_err(|_| CliError::Input(format!("bad braid letter `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let (name, m) = if gassner_mode {
        ("gassner", gassner(strands, &letters)?)
    } else {
        ("burau", burau(strands, &letters)?)
    };
    let rows = m.entry_strings();
    let det = m.det();
    let mut rep = Report::new(name);
    rep.put("matrix", matrix_value(&rows));
    rep.put("det", Value::String(det.to_string()));
    matrix_lines(&mut rep, "matrix", &rows);
    rep.line(&format!("det: {det}"));
    Ok(rep)
}

pub fn cmd_symplectic(path: &Path, genus: u16) -> CliResult {
    let phi = load_endomorphism(path)?;
    let fixes = fixes_boundary(&phi, genus)?;
    let symplectic = check_symplectic(&phi, genus)?;
    let sigma = sigma_matrix(&phi);
    let checks = vec![
        (String::from("fixes_boundary"), fixes),
        (String::from("symplectic"), symplectic),
    ];
    let mut rep = Report::new("symplectic");
    rep.put("diagnostics", diagnostics_value(&checks));
    rep.put("sigma", int_matrix_value(&sigma));
    for (name, ok) in &checks {
        rep.line(&format!("{name}: {ok}"));
    }
    Ok(rep)
}

pub fn cmd_johnson(path: &Path, k: usize) -> CliResult {
    let phi = load_endomorphism(path)?;
    let depth = filtration_depth(&phi, k + 2)?;
    let tau = johnson_tau(&phi, k)?;
    let mut rep = Report::new("johnson");
    rep.put("k", Value::from(k as u64));
    rep.put("depth_at_least", Value::from(depth as u64));
    rep.put(
        "tau",
        Value::Array(tau.iter().map(|s| Value::String(s.to_string())).collect()),
    );
    rep.line(&format!("depth >= {depth}"));
    for (i, part) in tau.iter().enumerate() {
        rep.line(&format!("tau_{k}[x{}] = {part}", i + 1));
    }
    Ok(rep)
}

pub fn cmd_cylinder(path: &Path) -> CliResult {
    let (p, _) = load_cylinder(path)?;
    let mut checks = p.validate().checks;
    if !checks.iter().all(|(_, ok)| *ok) {
        let failed: Vec<&str> = checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect();
        return Err(CliError::Domain(CoreError::NotACylinder(failed.join("; "))));
    }
    let r = p.magnus_cylinder()?;
    let det = r.det();
    let torsion = p.torsion_plus()?;
    checks.push((String::from("rhat_equals_conjugate_torsion_ratio"), p.rhat_relation_check()?));
    checks.push((String::from("symplectic"), p.check_symplectic_cylinder()?));
    let rows = r.entry_strings();
    let mut rep = Report::new("cylinder");
    rep.put("genus", Value::from(u64::from(p.genus())));
    rep.put("extra", Value::from(u64::from(p.extra_count())));
    rep.put("matrix", matrix_value(&rows));
    rep.put("det", Value::String(det.to_string()));
    rep.put("torsion", Value::String(torsion.to_string()));
    rep.put("unit_ambiguity", Value::Bool(true));
    rep.put("up_to", Value::String(String::from("±H")));
    rep.put("sigma", int_matrix_value(&p.sigma2()?));
    rep.put("diagnostics", diagnostics_value(&checks));
    rep.line(&format!("genus {} extra {}", p.genus(), p.extra_count()));
    for (name, ok) in &checks {
        rep.line(&format!("{name}: {ok}"));
    }
    matrix_lines(&mut rep, "matrix", &rows);
    rep.line(&format!("det: {det}"));
    rep.line(&format!("torsion: {torsion} (up to ±H)"));
    Ok(rep)
}

pub fn cmd_torsion(path: &Path) -> CliResult {
    let (p, _) = load_cylinder(path)?;
    let torsion = p.torsion_plus()?;
    let unit = torsion.is_monomial();
    let mut rep = Report::new("torsion");
    rep.put("torsion", Value::String(torsion.to_string()));
    rep.put("unit_ambiguity", Value::Bool(true));
    rep.put("up_to", Value::String(String::from("±H")));
    rep.put(
        "diagnostics",
        diagnostics_value(&[(String::from("unit"), unit)]),
    );
    rep.line(&format!("torsion: {torsion} (up to ±H)"));
    rep.line(&format!("unit: {unit}"));
    Ok(rep)
}

pub fn cmd_compose(first: &Path, second: &Path) -> CliResult {
    let (p1, _) = load_cylinder(first)?;
    let (p2, _) = load_cylinder(second)?;
    let c = compose(&p1, &p2)?;
    let r = c.magnus_cylinder()?;
    let rows = r.entry_strings();
    let mut rep = Report::new("compose");
    rep.put("cylinder", Value::String(c.to_string()));
    rep.put("genus", Value::from(u64::from(c.genus())));
    rep.put("extra", Value::from(u64::from(c.extra_count())));
    rep.put("matrix", matrix_value(&rows));
    rep.line(c.to_string().trim_end());
    matrix_lines(&mut rep, "matrix", &rows);
    Ok(rep)
}

pub fn cmd_alexander(path: &Path, genus: Option<u16>) -> CliResult {
    match genus {
        Some(g) => {
            let phi = load_endomorphism(path)?;
            let f = mapping_torus_alexander(&phi, g)?;
            let mut rep = Report::new("alexander");
            rep.put("det", Value::String(f.to_string()));
            rep.put("unit_ambiguity", Value::Bool(true));
            rep.put("up_to", Value::String(String::from("±H")));
            rep.line(&format!("{f} (up to ±H)"));
            Ok(rep)
        }
        None => {
            let pres = parse_presentation(&read_input(path)?)?;
            let input = WirtingerInput::new(pres)?;
            let delta = alexander_knot(&input)?;
            let mut rep = Report::new("alexander");
            rep.put("det", Value::String(delta.to_string()));
            rep.put("unit_ambiguity", Value::Bool(false));
            rep.line(&delta.to_string());
            Ok(rep)
        }
    }
}

pub fn cmd_fibered(path: &Path, genus: u16) -> CliResult {
    let phi = load_endomorphism(path)?;
    let delta = fibered_alexander(&phi, genus)?;
    let mut rep = Report::new("fibered");
    rep.put("det", Value::String(delta.to_string()));
    rep.put("unit_ambiguity", Value::Bool(false));
    rep.line(&delta.to_string());
    Ok(rep)
}

/// Accepts the knot polynomial in either `t` or `g1` spelling.
fn parse_knot_polynomial(text: &str) -> Result<foxcalc_core::ring::LaurentPolynomial, CliError> {
    Ok(parse_laurent(&text.replace('t', "g1"), 1)?)
}

pub fn cmd_factorize(path: &Path, delta: &str) -> CliResult {
    let (p, rho) = load_cylinder(path)?;
    let rho = rho.ok_or_else(|| {
        CliError::Domain(CoreError::DegeneratePresentation(String::from(
            "cylinder file has no rho1 line",
        )))
    })?;
    let input = SeifertCylinderInput::new(p, rho)?;
    let delta = parse_knot_polynomial(delta)?;
    let ok = factorization_check(&input, &delta)?;
    let mut rep = Report::new("factorize");
    rep.put("factorization", Value::Bool(ok));
    rep.put(
        "diagnostics",
        diagnostics_value(&[(String::from("factorization"), ok)]),
    );
    rep.line(&format!("factorization: {ok}"));
    Ok(rep)
}
