//! Commands behind the `ferro` binary. Each returns the text it would write.

use std::fmt::Write as _;
use std::path::Path;

use ferro_core::convolution::Engine;
use ferro_core::measures::{self, CltVariant};
use ferro_core::operator::{qubits_for_dim, C64};
use ferro_core::testing::{self, UnitaryVerdict};
use ferro_core::{circuits, DenseOperator, Execution, FerroError};
use nalgebra::DMatrix;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] FerroError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "E_IO",
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Deepest doubling order the dense engine is asked for.
pub const MAX_DENSE_KMAX: u32 = 4;
/// Deepest doubling order the cumulant engine is asked for.
pub const MAX_CUMULANT_KMAX: u32 = 6;

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn check_kmax(kmax: u32, engine: Engine) -> Result<()> {
    let limit = match engine {
        Engine::Dense => MAX_DENSE_KMAX,
        Engine::Cumulant => MAX_CUMULANT_KMAX,
    };
    if kmax > limit {
        return Err(FerroError::TooLarge {
            what: format!("kmax {kmax}"),
            limit: limit as usize,
        }
        .into());
    }
    Ok(())
}

fn check_grid(grid: usize) -> Result<()> {
    if grid < 2 {
        return Err(
            FerroError::Malformed(format!("grid needs at least 2 points, got {grid}")).into(),
        );
    }
    Ok(())
}

/// `phi,NG_k1..NG_kmax,NG_inf` for `psi_phi` at Renyi order `alpha`.
pub fn cmd_renyi(
    kmax: u32,
    grid: usize,
    alpha: f64,
    engine: Engine,
    exec: Execution,
) -> Result<String> {
    check_kmax(kmax, engine)?;
    check_grid(grid)?;
    if alpha.is_nan() || alpha < 0.0 {
        return Err(FerroError::Malformed(format!("alpha must be >= 0, got {alpha}")).into());
    }
    let rows = measures::ng_sweep(grid, kmax, alpha, engine, exec)?;
    let mut out = String::from("phi");
    for k in 1..=kmax {
        write!(out, ",NG_k{k}").unwrap();
    }
    out.push_str(",NG_inf\n");
    for row in rows {
        out.push_str(&num(row.phi));
        for v in row.by_order {
            write!(out, ",{}", num(v)).unwrap();
        }
        writeln!(out, ",{}", num(row.limit)).unwrap();
    }
    Ok(out)
}

/// Von Neumann case of [`cmd_renyi`].
pub fn cmd_fig2(kmax: u32, grid: usize, engine: Engine, exec: Execution) -> Result<String> {
    cmd_renyi(kmax, grid, 1.0, engine, exec)
}

/// `phi,K_G,K_M,K` for `psi_phi`.
pub fn cmd_weights(grid: usize, exec: Execution) -> Result<String> {
    check_grid(grid)?;
    let mut out = String::from("phi,K_G,K_M,K\n");
    for (phi, w) in measures::weight_sweep(grid, exec)? {
        writeln!(
            out,
            "{},{},{},{}",
            num(phi),
            num(w.gaussian),
            num(w.non_gaussian),
            num(w.total)
        )
        .unwrap();
    }
    Ok(out)
}

/// `k,distance,bound` for the doubling iterates of a state.
pub fn cmd_clt(rho: &DenseOperator, kmax: u32, engine: Engine) -> Result<String> {
    check_kmax(kmax, engine)?;
    let distances = measures::clt_distances(rho, kmax, engine)?;
    let weights = measures::cumulant_weights(rho)?;
    let mut out = String::from("k,distance,bound\n");
    for (k, d) in distances.into_iter().enumerate() {
        let b = measures::clt_bound_from_weights(&weights, k as u32, CltVariant::Doubling)?;
        writeln!(out, "{k},{},{}", num(d), num(b)).unwrap();
    }
    Ok(out)
}

/// Report for the three-copy state test: human lines, then a CSV header and row.
pub fn cmd_test_state(psi: &DenseOperator) -> Result<String> {
    let fidelity = testing::parity_fidelity(psi);
    let mut out = String::new();
    writeln!(out, "qubits: {}", psi.qubits()).unwrap();
    writeln!(out, "parity fidelity: {}", num(fidelity)).unwrap();
    let (even, p, gaussian, reason) = match testing::gaussian_state_test(psi) {
        Ok(r) => (
            true,
            Some(r.p_accept),
            r.gaussian,
            if r.gaussian { "" } else { "not-gaussian" },
        ),
        Err(FerroError::NotEven(_)) => (false, None, false, "not-even"),
        Err(e) => return Err(e.into()),
    };
    let p_text = p.map(num).unwrap_or_default();
    writeln!(out, "even: {even}").unwrap();
    writeln!(
        out,
        "p_accept: {}",
        if p_text.is_empty() { "n/a" } else { &p_text }
    )
    .unwrap();
    writeln!(
        out,
        "verdict: {}",
        if gaussian {
            "Gaussian".to_string()
        } else {
            format!("NotGaussian({reason})")
        }
    )
    .unwrap();
    out.push_str("even,p_accept,gaussian,reason\n");
    writeln!(out, "{even},{p_text},{gaussian},{reason}").unwrap();
    Ok(out)
}

/// Report for the Choi-state unitary test: human lines, then a CSV header and row.
pub fn cmd_test_unitary(u: &DenseOperator) -> Result<String> {
    let r = testing::gaussian_unitary_test(u)?;
    let (gaussian, reason) = match r.verdict {
        UnitaryVerdict::Gaussian => (true, ""),
        UnitaryVerdict::NotGaussian(why) => (false, why.as_str()),
    };
    let p_text = r.choi_p_accept.map(num).unwrap_or_default();
    let mut out = String::new();
    writeln!(out, "qubits: {}", u.qubits()).unwrap();
    writeln!(out, "even residual: {}", num(r.even_residual)).unwrap();
    writeln!(out, "even: {}", r.even).unwrap();
    writeln!(
        out,
        "choi p_accept: {}",
        if p_text.is_empty() { "n/a" } else { &p_text }
    )
    .unwrap();
    writeln!(
        out,
        "verdict: {}",
        if gaussian {
            "Gaussian".to_string()
        } else {
            format!("NotGaussian({reason})")
        }
    )
    .unwrap();
    out.push_str("even,choi_p_accept,gaussian,reason\n");
    writeln!(out, "{},{p_text},{gaussian},{reason}", r.even).unwrap();
    Ok(out)
}

/// Netlist for the convolution unitary on `2 * modes` qubits.
pub fn cmd_decompose(theta: f64, modes: usize) -> Result<String> {
    if modes == 0 {
        return Err(FerroError::Malformed("modes must be positive".into()).into());
    }
    Ok(circuits::emit_netlist(&circuits::decompose_conv_unitary(
        theta, modes,
    )?))
}

/// Parsed contents of a state or unitary file.
#[derive(Debug, Clone, PartialEq)]
pub enum ComplexData {
    Vector(Vec<C64>),
    Matrix(DMatrix<C64>),
}

/// Parses the `dim N` header followed by `re im` lines, row-major for matrices.
/// Blank lines and lines starting with `#` are skipped.
pub fn parse_complex_file(text: &str) -> Result<ComplexData> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let parse_err = |msg: String| CliError::Core(FerroError::Parse(msg));
    let (_, header) = lines.next().ok_or_else(|| parse_err("empty file".into()))?;
    let dim: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["dim", d] => d
            .parse()
            .map_err(|_| parse_err(format!("bad dimension `{d}`")))?,
        _ => {
            return Err(parse_err(format!(
                "expected `dim N` header, found `{header}`"
            )))
        }
    };
    qubits_for_dim(dim)?;
    let mut entries = Vec::new();
    for (no, line) in lines {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(parse_err(format!("line {}: expected `re im`", no + 1)));
        }
        let re: f64 = parts[0]
            .parse()
            .map_err(|_| parse_err(format!("line {}: bad number `{}`", no + 1, parts[0])))?;
        let im: f64 = parts[1]
            .parse()
            .map_err(|_| parse_err(format!("line {}: bad number `{}`", no + 1, parts[1])))?;
        entries.push(C64::new(re, im));
    }
    if entries.len() == dim {
        Ok(ComplexData::Vector(entries))
    } else if entries.len() == dim * dim {
        Ok(ComplexData::Matrix(DMatrix::from_row_slice(
            dim, dim, &entries,
        )))
    } else {
        Err(parse_err(format!(
            "dim {dim} needs {dim} or {} entries, found {}",
            dim * dim,
            entries.len()
        )))
    }
}

/// Writes a vector or matrix in the format read by [`parse_complex_file`].
pub fn format_complex_file(data: &ComplexData) -> String {
    let (dim, values): (usize, Vec<C64>) = match data {
        ComplexData::Vector(v) => (v.len(), v.clone()),
        ComplexData::Matrix(m) => (m.nrows(), m.transpose().iter().copied().collect()),
    };
    let mut out = format!("dim {dim}\n");
    for c in values {
        writeln!(out, "{} {}", num(c.re), num(c.im)).unwrap();
    }
    out
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A state file holds either a ket or a density matrix.
pub fn load_state(path: &Path) -> Result<DenseOperator> {
    match parse_complex_file(&read(path)?)? {
        ComplexData::Vector(v) => Ok(DenseOperator::from_pure(&v)?),
        ComplexData::Matrix(m) => Ok(DenseOperator::from_matrix(m)?),
    }
}

/// A unitary file must hold a matrix.
pub fn load_unitary(path: &Path) -> Result<DenseOperator> {
    match parse_complex_file(&read(path)?)? {
        ComplexData::Matrix(m) => Ok(DenseOperator::from_matrix(m)?),
        ComplexData::Vector(_) => {
            Err(FerroError::Parse("unitary file holds a vector, expected a matrix".into()).into())
        }
    }
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
