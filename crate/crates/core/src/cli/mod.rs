//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input, 3 unsupported
//! (irrational data where rational data is required).

pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::eigenstructure::{full_eigenstructure, minimal_basis};
use crate::error::{Error, Result};
use crate::exactalg::{fmt_rat, parse_rat, Mat, Rat};
use crate::genstruct::KroneckerSpec;
use crate::mobius::{commuting_diagram_check, mobius_transform, transport_eigenstructure, Mobius};
use crate::pencil::{block_evaluation, build_dl, transpose_law_holds, Ansatz, DLPencil};
use crate::polymat::PolyMat;
use crate::recovery::{
    quotient_dimensions, recover_eigenvector, recover_minimal_basis, recover_root_polys, OmegaMap,
};
use crate::rootpoly::maximal_set;

use verify::{run_batch, VerifyConfig, CHECKS, VIOLATED};

#[derive(Parser, Debug)]
#[command(
    name = "dlpencil",
    version,
    about = "Exact DL(P) pencils for singular matrix polynomials"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build DL(P, v) from a matrix polynomial and an ansatz vector.
    Dl {
        input: PathBuf,
        /// Ansatz coefficients, highest power first, e.g. `1,-1` for z - 1.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        omega: Vec<String>,
        /// Also evaluate the block-diagonal form of L(mu0).
        #[arg(long, allow_hyphen_values = true)]
        mu0: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Eigenvalues, partial multiplicities and minimal indices.
    Eig {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the verification suite on generated instances (JSON lines).
    Verify {
        /// KroneckerSpec JSON file (one object or an array).
        #[arg(long)]
        spec: Option<PathBuf>,
        /// Generate random instances (the default without --spec).
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Upper bounds `m,n,k`.
        #[arg(long, default_value = "3,3,3")]
        max_size: String,
        /// Restrict to these checks.
        #[arg(long = "check", value_parser = clap::builder::PossibleValuesParser::new(CHECKS))]
        checks: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu0: Option<String>,
        /// Use ansatz polynomials that share a root with the spectrum.
        #[arg(long)]
        inject_violation: bool,
        /// Add per-instance wall time to the reports.
        #[arg(long)]
        timing: bool,
    },
    /// Recover data of P from a pencil in DL(P, v).
    Recover {
        /// Pencil JSON, or the output of `dl --json`.
        input: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        omega: Vec<String>,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// The input is P itself rather than the pencil.
        #[arg(long)]
        polynomial: bool,
        #[arg(long)]
        json: bool,
    },
    /// Apply a Möbius map `(az + b)/(cz + d)` to a matrix polynomial.
    Mobius {
        input: PathBuf,
        /// `a,b,c,d`.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        map: Vec<String>,
        /// Grade of the result (default: grade of the input).
        #[arg(long)]
        grade: Option<usize>,
        /// Also check the commuting diagram for this ansatz.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        omega: Vec<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum What {
    Minbasis,
    Eigvec,
    Rootpolys,
}

/// Exit code for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Irrational(_) => 3,
        Error::Identity(_) | Error::IndexSumViolation { .. } => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn json_err(path: &Path, e: serde_json::Error) -> Error {
    Error::Parse(format!(
        "{}:{}:{}: {e}",
        path.display(),
        e.line(),
        e.column()
    ))
}

fn read_polymat(path: &Path) -> Result<PolyMat> {
    serde_json::from_str(&read(path)?).map_err(|e| json_err(path, e))
}

fn rats(xs: &[String]) -> Result<Vec<Rat>> {
    xs.iter().map(|s| parse_rat(s.trim())).collect()
}

fn rat_strings(xs: &[Rat]) -> Vec<String> {
    xs.iter().map(fmt_rat).collect()
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

fn mat_json(a: &Mat) -> Value {
    json!((0..a.rows())
        .map(|i| rat_strings(a.row(i)))
        .collect::<Vec<_>>())
}

fn cmd_dl(
    out: &mut dyn Write,
    input: &Path,
    omega: &[String],
    mu0: Option<&str>,
    as_json: bool,
) -> Result<i32> {
    let p = read_polymat(input)?;
    let v = Ansatz::new(rats(omega)?)?;
    let dl = build_dl(&p, &v)?;
    let transpose = transpose_law_holds(&p, &v)?;
    let be = mu0
        .map(|x| block_evaluation(&dl, &p, &parse_rat(x)?))
        .transpose()?;
    if as_json {
        let mut body = json!({
            "k": dl.k(),
            "omega": rat_strings(v.omega()),
            "v": v.poly().to_string(),
            "pencil": dl.pencil,
            "checks": {"divisibility": true, "contractions": true, "transpose": transpose},
        });
        if let Some(be) = &be {
            body["block_evaluation"] = json!({
                "nodes": be.nodes.iter().map(|(x, l)| json!([fmt_rat(x), l])).collect::<Vec<_>>(),
                "scalars": rat_strings(&be.scalars),
                "blocks": be.blocks.iter().map(mat_json).collect::<Vec<_>>(),
            });
        }
        emit(out, &body)?;
    } else {
        writeln!(out, "v(z) = {}", v.poly())?;
        writeln!(out, "L(z), {}x{}:", dl.pencil.rows(), dl.pencil.cols())?;
        write!(out, "{}", dl.pencil)?;
        writeln!(
            out,
            "divisibility ok, contractions ok, transpose law {}",
            if transpose { "ok" } else { "FAILED" }
        )?;
        if let Some(be) = &be {
            for ((x, l), (c, q)) in be.nodes.iter().zip(be.scalars.iter().zip(&be.blocks)) {
                writeln!(
                    out,
                    "node {} (multiplicity {l}), c = {}:",
                    fmt_rat(x),
                    fmt_rat(c)
                )?;
                write!(out, "{q}")?;
            }
        }
    }
    Ok(if transpose { 0 } else { 1 })
}

fn cmd_eig(out: &mut dyn Write, input: &Path, as_json: bool) -> Result<i32> {
    let p = read_polymat(input)?;
    let e = full_eigenstructure(&p, &[])?;
    if as_json {
        emit(out, &serde_json::to_value(&e)?)?;
    } else {
        writeln!(out, "grade {}, normal rank {}", e.grade, e.rank)?;
        for (x, m) in &e.finite {
            writeln!(out, "eigenvalue {}: {m:?}", fmt_rat(x))?;
        }
        if !e.infinite.is_empty() {
            writeln!(out, "eigenvalue inf: {:?}", e.infinite)?;
        }
        writeln!(out, "right minimal indices: {:?}", e.right)?;
        writeln!(out, "left minimal indices: {:?}", e.left)?;
        for w in e.warnings() {
            writeln!(out, "warning: {w}")?;
        }
    }
    Ok(0)
}

fn parse_max_size(s: &str) -> Result<(usize, usize, usize)> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("--max-size: {e}")))
        })
        .collect::<Result<_>>()?;
    match v[..] {
        [m, n, k] if m > 0 && n > 0 && k >= 2 => Ok((m, n, k)),
        _ => Err(Error::Parse(
            "--max-size wants m,n,k with m, n >= 1 and k >= 2".into(),
        )),
    }
}

fn read_specs(path: &Path) -> Result<Vec<KroneckerSpec>> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| json_err(path, e))?;
    let specs: Vec<KroneckerSpec> = if v.is_array() {
        serde_json::from_value(v).map_err(|e| json_err(path, e))?
    } else {
        vec![serde_json::from_value(v).map_err(|e| json_err(path, e))?]
    };
    for s in &specs {
        s.validate()?;
    }
    Ok(specs)
}

fn cmd_verify(out: &mut dyn Write, err: &mut dyn Write, cfg: VerifyConfig) -> Result<i32> {
    let reports = run_batch(&cfg);
    let (mut failed, mut violated) = (0, 0);
    for r in &reports {
        writeln!(out, "{}", serde_json::to_string(r)?)?;
        failed += r.failed() as usize;
        violated += (r.status == VIOLATED) as usize;
    }
    writeln!(
        err,
        "{} instances: {} passed, {} failed, {} with violated hypotheses",
        reports.len(),
        reports.len() - failed - violated,
        failed,
        violated
    )?;
    Ok(if failed > 0 { 1 } else { 0 })
}

/// Pencil and ansatz from a recover input: either a bare PolyMat or `dl --json` output.
fn read_pencil(input: &Path, omega: &[String], polynomial: bool) -> Result<(DLPencil, PolyMat)> {
    let text = read(input)?;
    let v: Value = serde_json::from_str(&text).map_err(|e| json_err(input, e))?;
    let (body, file_omega) = match v.get("pencil") {
        Some(p) => (p.clone(), v.get("omega").cloned()),
        None => (v, None),
    };
    let mat: PolyMat = serde_json::from_value(body).map_err(|e| json_err(input, e))?;
    let omega = if !omega.is_empty() {
        rats(omega)?
    } else if let Some(w) = file_omega {
        let w: Vec<String> = serde_json::from_value(w).map_err(|e| json_err(input, e))?;
        rats(&w)?
    } else {
        return Err(Error::Parse("--omega is required for a bare pencil".into()));
    };
    let ansatz = Ansatz::new(omega)?;
    if polynomial {
        let dl = build_dl(&mat, &ansatz)?;
        return Ok((dl, mat));
    }
    let dl = DLPencil::from_pencil(mat, ansatz)?;
    let p = dl.recover_polynomial()?;
    Ok((dl, p))
}

fn vec_json(v: &[Rat]) -> Value {
    json!(rat_strings(v))
}

fn cmd_recover(
    out: &mut dyn Write,
    input: &Path,
    omega: &[String],
    what: What,
    lambda: Option<&str>,
    polynomial: bool,
    as_json: bool,
) -> Result<i32> {
    let (dl, p) = read_pencil(input, omega, polynomial)?;
    let need_lambda = || -> Result<Rat> {
        parse_rat(lambda.ok_or_else(|| Error::Parse("--lambda is required".into()))?)
    };
    let omap = OmegaMap::of(&dl);
    let value = match what {
        What::Minbasis => {
            let n = minimal_basis(&dl.pencil)?;
            let m = recover_minimal_basis(&n, &omap, &p)?;
            if !as_json {
                writeln!(out, "minimal indices {:?}", m.indices)?;
                write!(out, "{}", m.basis)?;
                return Ok(0);
            }
            json!({"indices": m.indices, "basis": m.basis})
        }
        What::Eigvec => {
            let lambda = need_lambda()?;
            let mp = minimal_basis(&p)?;
            let ml = minimal_basis(&dl.pencil)?;
            let dims = quotient_dimensions(&p, &mp, &dl, &ml, &lambda);
            let mut vectors = Vec::new();
            if dims.geometric() > 0 {
                for u in dl.at(&lambda).nullspace() {
                    vectors.push(recover_eigenvector(&dl, &p, &u, &lambda)?);
                }
            }
            if !as_json {
                writeln!(
                    out,
                    "lambda = {}: dim ker P = {}, dim ker_lambda P = {}, dim ker L = {}, dim ker_lambda L = {}",
                    fmt_rat(&lambda),
                    dims.ker_p,
                    dims.ker_lambda_p,
                    dims.ker_l,
                    dims.ker_lambda_l
                )?;
                if dims.geometric() == 0 {
                    writeln!(out, "not an eigenvalue")?;
                }
                for v in &vectors {
                    writeln!(out, "{:?}", rat_strings(v))?;
                }
                return Ok(if dims.isomorphic() { 0 } else { 1 });
            }
            json!({
                "lambda": fmt_rat(&lambda),
                "eigenvalue": dims.geometric() > 0,
                "dimensions": dims,
                "quotients_match": dims.isomorphic(),
                "vectors": vectors.iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
            })
        }
        What::Rootpolys => {
            let lambda = need_lambda()?;
            let set = maximal_set(&dl.pencil, &lambda)?;
            let back = recover_root_polys(&set, &dl, &p)?;
            if !as_json {
                for r in &back.members {
                    writeln!(out, "order {}:", r.order)?;
                    write!(out, "{}", r.vec)?;
                }
                writeln!(out, "maximal: {}", back.maximal)?;
                return Ok(0);
            }
            json!({
                "lambda": fmt_rat(&lambda),
                "maximal": back.maximal,
                "root_polynomials": back.members.iter().map(|r| json!({"order": r.order, "vector": r.vec})).collect::<Vec<_>>(),
            })
        }
    };
    emit(out, &value)?;
    Ok(0)
}

fn cmd_mobius(
    out: &mut dyn Write,
    input: &Path,
    map: &[String],
    grade: Option<usize>,
    omega: &[String],
    as_json: bool,
) -> Result<i32> {
    let p = read_polymat(input)?;
    let c = rats(map)?;
    if c.len() != 4 {
        return Err(Error::Parse("--map wants four numbers a,b,c,d".into()));
    }
    let r = Mobius::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())?;
    let g = grade.unwrap_or(p.grade());
    let q = mobius_transform(&p, g, &r)?;
    let p = p.with_grade(g)?;
    let before = full_eigenstructure(&p, &[])?;
    let moved = transport_eigenstructure(&before, &r);
    let cands: Vec<Rat> = moved.finite.keys().cloned().collect();
    let after = full_eigenstructure(&q, &cands)?;
    let transported = after == moved;
    let diagram = if omega.is_empty() {
        None
    } else {
        Some(commuting_diagram_check(
            &p,
            &Ansatz::new(rats(omega)?)?,
            &r,
        )?)
    };
    let ok = transported && diagram.as_ref().is_none_or(|d| d.holds);
    if as_json {
        emit(
            out,
            &json!({
                "result": q,
                "eigenstructure": after,
                "transport_matches": transported,
                "commuting_diagram": diagram.map(|d| json!({"holds": d.holds, "first_difference": d.first_difference})),
            }),
        )?;
    } else {
        write!(out, "{q}")?;
        writeln!(out, "eigenstructure transported exactly: {transported}")?;
        if let Some(d) = diagram {
            writeln!(
                out,
                "commuting diagram: {}",
                if d.holds { "holds" } else { "FAILS" }
            )?;
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cli.cmd {
        Cmd::Dl {
            input,
            omega,
            mu0,
            json,
        } => cmd_dl(out, &input, &omega, mu0.as_deref(), json),
        Cmd::Eig { input, json } => cmd_eig(out, &input, json),
        Cmd::Verify {
            spec,
            random: _,
            seed,
            count,
            max_size,
            checks,
            mu0,
            inject_violation,
            timing,
        } => {
            let mut cfg = VerifyConfig {
                seed,
                count,
                max_size: parse_max_size(&max_size)?,
                mu0: mu0.as_deref().map(parse_rat).transpose()?,
                inject_violation,
                timing,
                ..VerifyConfig::default()
            };
            if !checks.is_empty() {
                cfg.checks = checks;
            }
            if let Some(path) = spec {
                cfg.specs = read_specs(&path)?;
            }
            cmd_verify(out, err, cfg)
        }
        Cmd::Recover {
            input,
            omega,
            what,
            lambda,
            polynomial,
            json,
        } => cmd_recover(
            out,
            &input,
            &omega,
            what,
            lambda.as_deref(),
            polynomial,
            json,
        ),
        Cmd::Mobius {
            input,
            map,
            grade,
            omega,
            json,
        } => cmd_mobius(out, &input, &map, grade, &omega, json),
    }
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return e.exit_code();
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
