//! Problem files: TOML with exactly one of `[symbol]`, `[family]`,
//! `[form]` or `[invariant]`.

use std::path::Path;

use serde::Deserialize;
use spectral_core::{Complex64, ComplexMatrix, IntersectionForm, LaurentSymbol};

use crate::report::{input, CliError};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    symbol: Option<SymbolSection>,
    family: Option<FamilySpec>,
    form: Option<FormSection>,
    invariant: Option<InvariantInput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolSection {
    block: Option<usize>,
    bandwidth: Option<usize>,
    coeff: Vec<Coefficient>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Coefficient {
    power: i32,
    re: Vec<Vec<f64>>,
    im: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormSection {
    name: Option<String>,
    matrix: Vec<Vec<i64>>,
}

/// Complex matrix written as real and optional imaginary parts.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInput {
    pub re: Vec<Vec<f64>>,
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixInput {
    pub fn to_matrix(&self) -> Result<ComplexMatrix, CliError> {
        complex_matrix(&self.re, self.im.as_deref())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum FamilySpec {
    /// Discrete circle operator `D^c` (massive when `mass ≠ 0`).
    Circle {
        spin: String,
        #[serde(default = "default_scheme")]
        scheme: String,
        #[serde(default = "default_grid")]
        n: usize,
        #[serde(default)]
        mass: f64,
        #[serde(default)]
        from: f64,
        #[serde(default = "one")]
        to: f64,
        #[serde(default = "yes")]
        periodic: bool,
    },
    /// `A + c·B`.
    Affine {
        a: MatrixInput,
        b: MatrixInput,
        #[serde(default)]
        from: f64,
        #[serde(default = "one")]
        to: f64,
        #[serde(default)]
        periodic: bool,
    },
}

fn default_scheme() -> String {
    "spectral".into()
}
fn default_grid() -> usize {
    spectral_core::constants::DEFAULT_GRID
}
fn one() -> f64 {
    1.0
}
fn yes() -> bool {
    true
}

/// Rationals may be written as integers or as `"p/q"` strings.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RationalInput {
    Integer(i64),
    Text(String),
}

impl RationalInput {
    pub fn as_text(&self) -> String {
        match self {
            RationalInput::Integer(n) => n.to_string(),
            RationalInput::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvariantInput {
    pub kind: String,
    pub n: Option<u32>,
    pub ind_plus: Option<i64>,
    pub dim_ker: Option<u64>,
    pub dim_ker_plus: Option<u64>,
    pub sign: Option<i64>,
    pub sig_w: Option<i64>,
    pub sig_v: Option<i64>,
    pub rho: Option<RationalInput>,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Debug)]
pub enum Problem {
    Symbol(LaurentSymbol),
    Family(FamilySpec),
    Form(IntersectionForm),
    Invariant(InvariantInput),
}

impl Problem {
    fn kind(&self) -> &'static str {
        match self {
            Problem::Symbol(_) => "symbol",
            Problem::Family(_) => "family",
            Problem::Form(_) => "form",
            Problem::Invariant(_) => "invariant",
        }
    }
}

pub fn complex_matrix(re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<ComplexMatrix, CliError> {
    let rows = re.len();
    let cols = re.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 || re.iter().any(|r| r.len() != cols) {
        return Err(input("matrix rows must be nonempty and of equal length"));
    }
    if let Some(im) = im {
        if im.len() != rows || im.iter().any(|r| r.len() != cols) {
            return Err(input(format!(
                "imaginary part must have the same shape as the real part ({rows}x{cols})"
            )));
        }
    }
    Ok(ComplexMatrix::from_fn(rows, cols, |i, j| {
        Complex64::new(re[i][j], im.map_or(0.0, |m| m[i][j]))
    }))
}

fn build_symbol(sec: SymbolSection) -> Result<LaurentSymbol, CliError> {
    let mut blocks = Vec::with_capacity(sec.coeff.len());
    for c in &sec.coeff {
        blocks.push((c.power, complex_matrix(&c.re, c.im.as_deref())?));
    }
    let s = LaurentSymbol::new(blocks)?;
    if let Some(b) = sec.block {
        if b != s.block_size() {
            return Err(input(format!(
                "declared block size {b} but coefficients are {0}x{0}",
                s.block_size()
            )));
        }
    }
    if let Some(d) = sec.bandwidth {
        if d != s.bandwidth() {
            return Err(input(format!(
                "declared bandwidth {d} but the largest |power| is {}",
                s.bandwidth()
            )));
        }
    }
    Ok(s)
}

pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| input(e.to_string()))?;
    let present = [
        raw.symbol.is_some(),
        raw.family.is_some(),
        raw.form.is_some(),
        raw.invariant.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if present != 1 {
        return Err(input(format!(
            "a problem file needs exactly one of [symbol], [family], [form], [invariant]; found {present}"
        )));
    }
    if let Some(s) = raw.symbol {
        return build_symbol(s).map(Problem::Symbol);
    }
    if let Some(f) = raw.family {
        return Ok(Problem::Family(f));
    }
    if let Some(f) = raw.form {
        let name = f.name.unwrap_or_else(|| "custom".into());
        return Ok(Problem::Form(IntersectionForm::new(name, f.matrix)?));
    }
    Ok(Problem::Invariant(raw.invariant.expect("one section present")))
}

pub fn load(path: &Path) -> Result<Problem, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| match e {
        CliError::Input(m) => input(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn wrong_kind(p: &Problem, want: &str) -> CliError {
    input(format!("expected a [{want}] problem file, got [{}]", p.kind()))
}

pub fn load_symbol(path: &Path) -> Result<LaurentSymbol, CliError> {
    match load(path)? {
        Problem::Symbol(s) => Ok(s),
        p => Err(wrong_kind(&p, "symbol")),
    }
}

pub fn load_family(path: &Path) -> Result<FamilySpec, CliError> {
    match load(path)? {
        Problem::Family(f) => Ok(f),
        p => Err(wrong_kind(&p, "family")),
    }
}

pub fn load_form(path: &Path) -> Result<IntersectionForm, CliError> {
    match load(path)? {
        Problem::Form(f) => Ok(f),
        p => Err(wrong_kind(&p, "form")),
    }
}

pub fn load_invariant(path: &Path) -> Result<InvariantInput, CliError> {
    match load(path)? {
        Problem::Invariant(i) => Ok(i),
        p => Err(wrong_kind(&p, "invariant")),
    }
}
