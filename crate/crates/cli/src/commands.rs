use std::path::Path;

use serde_json::{json, Value};
use spectral_core::constants::{self, FREDHOLM_TOL, GROUPING_TOL};
use spectral_core::discretize::{build_circle_dirac, massive_matrix, Scheme};
use spectral_core::floquet::{
    fredholm_via_sections, is_fredholm_with_grid, section_kernel_cokernel, spectral_flow_with,
    winding_number, FlowOptions,
};
use spectral_core::linalg::hermitian_eigenvalues;
use spectral_core::spectra::{circle_spectrum, product_square_spectrum, sphere_spectrum};
use spectral_core::topo::{
    alpha_n, beta, builtin_form, format_rational, parse_form_sum, rohlin, w_cs, w_cs_matches_beta,
    w_invariant, w_mod2_equals_rohlin, AlphaData, Mod2Rational,
};
use spectral_core::{ComplexMatrix, Error, IntersectionForm, SpectrumSample, SpinStructure};

use crate::problem::{self, FamilySpec, InvariantInput};
use crate::report::{input, CliError, Outcome};

type CmdResult = Result<Outcome, CliError>;

fn parse_spin(s: &str) -> Result<SpinStructure, CliError> {
    Ok(s.parse::<SpinStructure>()?)
}

fn parse_scheme(s: &str) -> Result<Scheme, CliError> {
    Ok(s.parse::<Scheme>()?)
}

fn scheme_name(s: Scheme) -> &'static str {
    match s {
        Scheme::Spectral => "spectral",
        Scheme::CentralDifference => "central-difference",
    }
}

fn spin_name(s: SpinStructure) -> &'static str {
    match s {
        SpinStructure::Bounding => "bounding",
        SpinStructure::NonBounding => "nonbounding",
    }
}

fn finite(name: &str, x: f64) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(input(format!("{name} must be finite")))
    }
}

fn spectrum_rows(s: &SpectrumSample) -> (Value, String) {
    let rows: Vec<Value> = s
        .pairs()
        .iter()
        .map(|&(v, m)| json!({ "value": v, "multiplicity": m }))
        .collect();
    let mut csv = String::from("eigenvalue,multiplicity\n");
    for &(v, m) in s.pairs() {
        csv.push_str(&format!("{v},{m}\n"));
    }
    (Value::Array(rows), csv)
}

/// Circle spectrum inside `|λ| ≤ band`, closed form or from a discrete
/// operator on `grid` sites.
pub fn spectrum_circle(spin: &str, c: f64, band: usize, grid: Option<usize>, scheme: &str, eig_tol: f64) -> CmdResult {
    let spin = parse_spin(spin)?;
    let c = finite("c", c)?;
    if band == 0 {
        return Err(input("band must be at least 1"));
    }
    let radius = band as f64 + 1e-12;
    let (values, source) = match grid {
        None => {
            let wide = band + c.abs().ceil() as usize + 1;
            (circle_spectrum(spin, c, wide)?.expanded(), "closed-form".to_string())
        }
        Some(n) => {
            let scheme = parse_scheme(scheme)?;
            let d = build_circle_dirac(n, scheme, spin, c)?;
            (d.eigenvalues(eig_tol)?, scheme_name(scheme).to_string())
        }
    };
    let kept: Vec<f64> = values.into_iter().filter(|v| v.abs() <= radius).collect();
    let s = SpectrumSample::from_eigenvalues(&kept, band, GROUPING_TOL, false);
    let (rows, csv) = spectrum_rows(&s);
    let mut results = json!({
        "kind": "circle",
        "spin": spin_name(spin),
        "c": c,
        "band": band,
        "source": source,
        "eigenvalues": rows,
        "tolerance": GROUPING_TOL,
    });
    let mut out = Outcome::new(Value::Null).tol("grouping", GROUPING_TOL);
    if let Some(n) = grid {
        results["grid"] = json!(n);
        out = out.tol("eigensolver", eig_tol);
    }
    out.results = results;
    Ok(out.with_csv(csv))
}

pub fn spectrum_sphere(l: u32, kmax: usize) -> CmdResult {
    let s = sphere_spectrum(l, kmax)?;
    let (rows, csv) = spectrum_rows(&s);
    let results = json!({
        "kind": "sphere",
        "l": l,
        "kmax": kmax,
        "eigenvalues": rows,
        "lower_bound": l as f64 / 2.0,
        "tolerance": GROUPING_TOL,
    });
    Ok(Outcome::new(results).tol("grouping", GROUPING_TOL).with_csv(csv))
}

/// Squared spectrum of the circle times `S^l` up to `cutoff`.
pub fn spectrum_product(spin: &str, c: f64, l: u32, cutoff: f64) -> CmdResult {
    let spin = parse_spin(spin)?;
    let c = finite("c", c)?;
    let cutoff = finite("cutoff", cutoff)?;
    if cutoff < 0.0 {
        return Err(input("cutoff must be non-negative"));
    }
    let radius = cutoff.sqrt().ceil() as usize + 2;
    let base = circle_spectrum(spin, c, radius + c.abs().ceil() as usize)?;
    let sphere = sphere_spectrum(l, radius)?;
    let s = product_square_spectrum(&base, &sphere, cutoff)?;
    let (rows, csv) = spectrum_rows(&s);
    let bound = (l as f64).powi(2) / 4.0;
    let holds = s.min().map_or(true, |m| m >= bound - GROUPING_TOL);
    let results = json!({
        "kind": "product",
        "spin": spin_name(spin),
        "c": c,
        "l": l,
        "cutoff": cutoff,
        "squared_eigenvalues": rows,
        "lower_bound": bound,
        "bound_holds": holds,
        "tolerance": GROUPING_TOL,
    });
    Ok(Outcome::new(results).tol("grouping", GROUPING_TOL).with_csv(csv))
}

fn circle_family(
    n: usize,
    scheme: Scheme,
    spin: SpinStructure,
    mass: f64,
) -> impl Fn(f64) -> spectral_core::Result<ComplexMatrix> {
    move |c| {
        let d = build_circle_dirac(n, scheme, spin, c)?;
        Ok(if mass != 0.0 {
            massive_matrix(&d.matrix, mass)
        } else {
            d.matrix
        })
    }
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

pub struct ScanArgs<'a> {
    pub spin: &'a str,
    pub scheme: &'a str,
    pub c_from: f64,
    pub c_to: f64,
    pub steps: usize,
    pub grid: usize,
    pub mass: f64,
    pub zero_tol: f64,
    pub eig_tol: f64,
}

/// Twist values in one period where the discrete `D^c` has a numerical
/// kernel: samples with `min |λ| ≤ zero_tol·max |λ|`, plus sign changes
/// located by bisection.
pub fn twist_scan(a: ScanArgs) -> CmdResult {
    let spin = parse_spin(a.spin)?;
    let scheme = parse_scheme(a.scheme)?;
    let (from, to) = (finite("c-from", a.c_from)?, finite("c-to", a.c_to)?);
    if !(to > from) || a.steps == 0 {
        return Err(input("need c-to > c-from and steps > 0"));
    }
    if !(a.zero_tol > 0.0) {
        return Err(input("zero tolerance must be positive"));
    }
    let family = circle_family(a.grid, scheme, spin, finite("mass", a.mass)?);

    let h = (to - from) / a.steps as f64;
    let mut samples = Vec::with_capacity(a.steps + 1);
    let mut kernels: Vec<f64> = Vec::new();
    let mut push_kernel = |c: f64| {
        let c = c.rem_euclid(1.0);
        if !kernels.iter().any(|&k| circular_distance(k, c) < 1e-6) {
            kernels.push(c);
        }
    };
    let mut overall = f64::INFINITY;
    for k in 0..=a.steps {
        let c = if k == a.steps { to } else { from + k as f64 * h };
        let ev = hermitian_eigenvalues(&family(c)?, a.eig_tol)?.eigenvalues;
        let scale = ev.iter().map(|x| x.abs()).fold(1.0, f64::max);
        let m = ev.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
        overall = overall.min(m);
        if m <= a.zero_tol * scale {
            push_kernel(c);
        }
        samples.push((c, m));
    }

    let opts = FlowOptions {
        start: from,
        end: to,
        zero_tol: a.zero_tol,
        require_periodic: false,
        eig_tol: a.eig_tol,
        ..FlowOptions::default()
    };
    let (flow, crossings) = match spectral_flow_with(&family, a.steps, opts) {
        Ok(r) => {
            for x in &r.crossings {
                push_kernel(x.parameter);
            }
            (Some(r.flow), r.crossings)
        }
        Err(Error::DegenerateCrossing { parameter }) => {
            push_kernel(parameter);
            (None, Vec::new())
        }
        Err(e) => return Err(e.into()),
    };
    kernels.sort_by(f64::total_cmp);

    let verdict = if kernels.is_empty() { "fredholm" } else { "not-fredholm" };
    let mut csv = String::from("c,min_abs_eigenvalue\n");
    for (c, m) in &samples {
        csv.push_str(&format!("{c},{m}\n"));
    }
    let results = json!({
        "spin": spin_name(spin),
        "scheme": scheme_name(scheme),
        "grid": a.grid,
        "mass": a.mass,
        "c_from": from,
        "c_to": to,
        "steps": a.steps,
        "kernels": kernels,
        "verdict": verdict,
        "flow": flow,
        "crossings": crossings,
        "min_abs_eigenvalue": overall,
        "zero_tol": a.zero_tol,
        "samples": samples
            .iter()
            .map(|&(c, m)| json!({ "c": c, "min_abs_eigenvalue": m }))
            .collect::<Vec<_>>(),
    });
    Ok(Outcome::new(results)
        .tol("zero", a.zero_tol)
        .tol("eigensolver", a.eig_tol)
        .with_csv(csv))
}

fn symbol_summary(s: &spectral_core::LaurentSymbol) -> Value {
    json!({ "block": s.block_size(), "bandwidth": s.bandwidth() })
}

pub fn fredholm(path: &Path, tol: Option<f64>, grid: usize, sections: &[usize]) -> CmdResult {
    let s = problem::load_symbol(path)?;
    let tol = tol.unwrap_or(FREDHOLM_TOL);
    if grid == 0 {
        return Err(input("grid must be positive"));
    }
    let report = is_fredholm_with_grid(&s, tol, grid)?;
    let mut results = json!({
        "symbol": symbol_summary(&s),
        "fredholm": report,
    });
    if !sections.is_empty() {
        results["sections"] = serde_json::to_value(fredholm_via_sections(&s, sections, tol)?)
            .expect("serializable");
    }
    Ok(Outcome::new(results).tol("fredholm", tol).tol("refine", constants::REFINE_TOL))
}

pub fn index(path: &Path, tol: Option<f64>, section: Option<usize>) -> CmdResult {
    let s = problem::load_symbol(path)?;
    let tol = tol.unwrap_or(FREDHOLM_TOL);
    let report = is_fredholm_with_grid(&s, tol, constants::CIRCLE_GRID)?;
    if !report.is_fredholm {
        return Err(Error::NotFredholm {
            min_singular: report.min_singular,
            tol,
        }
        .into());
    }
    let winding = winding_number(&s)?;
    let mut results = json!({
        "symbol": symbol_summary(&s),
        "index": -winding,
        "winding": winding,
        "min_singular": report.min_singular,
        "convention": constants::INDEX_CONVENTION,
    });
    let mut out = Outcome::new(Value::Null).tol("fredholm", tol);
    if let Some(n) = section {
        let threshold = 1e-8;
        let k = section_kernel_cokernel(&s, n, threshold)?;
        results["section_oracle"] = json!({
            "periods": n,
            "kernel": k.kernel,
            "cokernel": k.cokernel,
            "index": k.index(),
        });
        out = out.tol("section_threshold", threshold);
    }
    out.results = results;
    Ok(out)
}

pub fn spectral_flow(path: &Path, steps: usize, eig_tol: f64) -> CmdResult {
    let spec = problem::load_family(path)?;
    if steps == 0 {
        return Err(input("steps must be positive"));
    }
    let defaults = FlowOptions::default();
    let (result, description) = match &spec {
        FamilySpec::Circle { spin, scheme, n, mass, from, to, periodic } => {
            let sp = parse_spin(spin)?;
            let sc = parse_scheme(scheme)?;
            let opts = FlowOptions { start: *from, end: *to, require_periodic: *periodic, eig_tol, ..defaults };
            let r = spectral_flow_with(circle_family(*n, sc, sp, *mass), steps, opts)?;
            let d = json!({
                "type": "circle", "spin": spin_name(sp), "scheme": scheme_name(sc),
                "n": n, "mass": mass, "from": from, "to": to, "periodic": periodic,
            });
            (r, d)
        }
        FamilySpec::Affine { a, b, from, to, periodic } => {
            let (a, b) = (a.to_matrix()?, b.to_matrix()?);
            if a.rows() != b.rows() || a.cols() != b.cols() {
                return Err(input("A and B must have the same shape"));
            }
            let opts = FlowOptions { start: *from, end: *to, require_periodic: *periodic, eig_tol, ..defaults };
            let family = |c: f64| Ok(&a + &b.scale(c.into()));
            let r = spectral_flow_with(family, steps, opts)?;
            let d = json!({
                "type": "affine", "size": a.rows(), "from": from, "to": to, "periodic": periodic,
            });
            (r, d)
        }
    };
    let results = json!({
        "family": description,
        "steps": steps,
        "flow": result.flow,
        "crossings": result.crossings,
    });
    Ok(Outcome::new(results)
        .tol("zero", defaults.zero_tol)
        .tol("periodicity", defaults.periodicity_tol)
        .tol("eigensolver", eig_tol))
}

fn need<T: Copy>(v: Option<T>, name: &str, kind: &str) -> Result<T, CliError> {
    v.ok_or_else(|| input(format!("`{kind}` needs {name}")))
}

fn mod2_json(m: &Mod2Rational) -> Value {
    json!({
        "value": format_rational(m.value()),
        "residue": format_rational(m.residue()),
        "mod2": m.to_string(),
    })
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

/// Evaluates one invariant; every number in the result is an exact
/// integer or a `"p/q"` string.
pub fn invariant(inv: &InvariantInput) -> CmdResult {
    let kind = inv.kind.to_ascii_lowercase();
    let k = kind.as_str();
    let head = json!({ "kind": k });
    let body = match k {
        "alpha" => {
            let n = need(inv.n, "n", k)?;
            let given = [
                inv.ind_plus.map(AlphaData::IndPlus),
                inv.dim_ker.map(AlphaData::DimKer),
                inv.dim_ker_plus.map(AlphaData::DimKerPlus),
                inv.sign.map(AlphaData::Sign),
            ];
            let mut given = given.into_iter().flatten();
            let data = given.next().unwrap_or(AlphaData::None);
            if given.next().is_some() {
                return Err(input("give at most one of ind-plus, dim-ker, dim-ker-plus, sign"));
            }
            let e = alpha_n(n, data)?;
            let display = match e.value {
                spectral_core::topo::KOValue::Integer(v) => v.to_string(),
                spectral_core::topo::KOValue::Bit(b) => b.to_string(),
                spectral_core::topo::KOValue::Trivial => "0".into(),
            };
            json!({
                "n": n,
                "group": e.group(),
                "element": e.value,
                "value": display,
                "is_zero": e.is_zero(),
            })
        }
        "rohlin" => {
            let s = need(inv.sig_w, "sig-w", k)?;
            merge(json!({ "sig_w": s, "strict": inv.strict }), mod2_json(&rohlin(s, inv.strict)?))
        }
        "w" => {
            let (i, s) = (need(inv.ind_plus, "ind-plus", k)?, need(inv.sig_w, "sig-w", k)?);
            let w = Mod2Rational::new(w_invariant(i, s));
            let matches = w_mod2_equals_rohlin(i, s).ok();
            merge(
                json!({ "ind_plus": i, "sig_w": s }),
                merge(mod2_json(&w), json!({ "matches_rohlin": matches })),
            )
        }
        "beta" => {
            let rho_text = inv.rho.as_ref().ok_or_else(|| input("`beta` needs rho"))?.as_text();
            let rho: Mod2Rational = rho_text.parse()?;
            let v = need(inv.sig_v, "sig-v", k)?;
            let b = beta(&rho, v, inv.strict)?;
            merge(
                json!({ "rho": format_rational(rho.value()), "sig_v": v, "strict": inv.strict }),
                mod2_json(&b),
            )
        }
        "wcs" | "w_cs" | "w-cs" => {
            let i = need(inv.ind_plus, "ind-plus", k)?;
            let s = need(inv.sig_w, "sig-w", k)?;
            let v = need(inv.sig_v, "sig-v", k)?;
            let w = Mod2Rational::new(w_cs(i, s, v));
            let matches = w_cs_matches_beta(i, s, v).ok();
            merge(
                json!({ "ind_plus": i, "sig_w": s, "sig_v": v }),
                merge(mod2_json(&w), json!({ "matches_beta": matches })),
            )
        }
        other => {
            return Err(input(format!(
                "unknown invariant `{other}` (expected alpha, rohlin, w, beta, wcs)"
            )))
        }
    };
    Ok(Outcome::new(merge(head, body)))
}

pub fn invariant_file(path: &Path) -> CmdResult {
    invariant(&problem::load_invariant(path)?)
}

fn form_json(f: &IntersectionForm) -> Value {
    json!({
        "name": f.name,
        "rank": f.rank,
        "signature": f.signature,
        "inertia": f.inertia,
        "even": f.is_even(),
        "unimodular": f.is_unimodular(),
        "determinant": f.determinant().to_string(),
        "matrix": f.matrix,
    })
}

pub fn forms_list() -> CmdResult {
    let forms: Vec<Value> = ["E8", "H", "K3"]
        .iter()
        .map(|n| {
            let f = builtin_form(n).expect("builtin");
            json!({ "name": f.name, "rank": f.rank, "signature": f.signature })
        })
        .collect();
    Ok(Outcome::new(json!({
        "forms": forms,
        "also": "Diag(a,b,...) for diagonal forms; sums like \"-E8+E8+3H\" via `forms sum`",
    })))
}

pub fn forms_show(name: &str) -> CmdResult {
    Ok(Outcome::new(form_json(&builtin_form(name)?)))
}

pub fn forms_sum(spec: &str) -> CmdResult {
    Ok(Outcome::new(form_json(&parse_form_sum(spec)?)))
}

pub fn forms_load(path: &Path) -> CmdResult {
    Ok(Outcome::new(form_json(&problem::load_form(path)?)))
}
