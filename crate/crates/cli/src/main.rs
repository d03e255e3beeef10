//! Command-line front end: build witnesses from the map families, pair them with
//! states, run positivity/PPT checks, certificate experiments, region scans, the
//! PPT minimization probe, the orthogonal-equivalence check, and the built-in
//! verification battery.
//!
//! Exit codes: 0 success (and, for detection commands, a certified/positive
//! outcome); 1 a detection command came back negative or inconclusive; 2 usage
//! error; 3 numeric or I/O failure.

use std::path::{Path, PathBuf};
use std::process::exit;

use clap::{Args, Parser, Subcommand};

use atomap::choi::{choi, pair};
use atomap::detect::{
    atomicity_certificate, canonical_region_states, indecomposability_certificate,
    minimize_over_ppt, region_scan, verify_bh_robertson_equivalence, CertificateResult,
    Conclusion, RegionReport,
};
use atomap::maps::{
    breuer_hall, chi_map, random_antisym_unitary, random_orthogonal, reduction_map, robertson,
    trace_map, AntisymOp, LinMap,
};
use atomap::selftest;
use atomap::states::{
    gamma_conjugate, ha_schmidt_certificates, ppt_check, rho_ha, rho_new, BipState, GammaSide,
    HaVariant, SchmidtCertificate,
};
use atomap::{BipOp, CMat};
use atomap_cli::matrixfile;

#[derive(Parser)]
#[command(
    name = "atomap",
    version,
    about = "Positive-map families, their entanglement witnesses, and certificate-based detection"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Construct the witness of a map
    Witness {
        #[command(subcommand)]
        cmd: WitnessCmd,
    },
    /// Pairing Tr(Ŵ·ρ) of a state with a map's witness; prints the value
    Pair {
        #[command(flatten)]
        map: MapArgs,
        /// Builtin state (ha, ha3, new, ha-gamma, new-gamma) or a matrix file
        #[arg(long)]
        state: String,
    },
    /// Positivity and partial-transpose check of a state (exit 1 if not PPT)
    Ppt {
        /// Builtin state (ha, ha3, new, ha-gamma, new-gamma) or a matrix file
        #[arg(long)]
        state: String,
        /// Eigenvalue floor treated as zero
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Certificate experiments (exit 1 when the certification is not reached)
    Certify {
        #[command(subcommand)]
        cmd: CertifyCmd,
    },
    /// Scan the two-parameter family over the unit square; prints CSV
    Region {
        /// Grid points per axis (n ≥ 2)
        #[arg(long, default_value_t = 64)]
        grid: usize,
        /// Antisymmetric unitary: "u0" or "seed:N"
        #[arg(long, default_value = "u0")]
        u: String,
        /// Write the CSV here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render the CSV as an SVG heat map at this path
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Search states with positive partial transpose for the minimal pairing
    Minimize {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, default_value_t = 5000)]
        iters: usize,
        #[arg(long, default_value_t = 0.5)]
        step: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Verify the orthogonal-conjugation equivalence of the two d=4 presentations
    Equivalence {
        /// Number of random orthogonal conjugations to test
        #[arg(long, default_value_t = 20)]
        trials: usize,
        /// Random Hermitian inputs per conjugation
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the built-in verification battery (exit 1 on any failure)
    Selftest,
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Build the witness and print a summary
    Build {
        #[command(flatten)]
        map: MapArgs,
        /// Write the witness matrix to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the witness eigenvalues, ascending, one per line
    Spectrum {
        #[command(flatten)]
        map: MapArgs,
    },
}

#[derive(Subcommand)]
enum CertifyCmd {
    /// Atomicity certificate; the state must carry Schmidt certificates (ha, ha-gamma)
    Atomic {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Indecomposability certificate (any state)
    Indec {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        state: String,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Args)]
struct MapArgs {
    /// Builtin map: robertson | reduction | trace | bh | chi
    #[arg(long)]
    map: String,
    /// Matrix dimension for reduction/trace/bh/chi
    #[arg(long, default_value_t = 4)]
    d: usize,
    /// First family parameter (chi)
    #[arg(long)]
    x: Option<f64>,
    /// Second family parameter (chi)
    #[arg(long)]
    y: Option<f64>,
    /// Antisymmetric unitary for bh/chi: "u0" or "seed:N"
    #[arg(long, default_value = "u0")]
    u: String,
}

enum Failure {
    Usage(String),
    Run(String),
}

impl From<atomap::Error> for Failure {
    fn from(e: atomap::Error) -> Failure {
        Failure::Run(e.to_string())
    }
}

impl From<matrixfile::MatrixFileError> for Failure {
    fn from(e: matrixfile::MatrixFileError) -> Failure {
        Failure::Run(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Run(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            2
        }
        Err(Failure::Run(m)) => {
            eprintln!("error: {m}");
            3
        }
    };
    exit(code);
}

fn antisym_arg(u: &str, d: usize) -> Result<AntisymOp, Failure> {
    if u == "u0" {
        Ok(AntisymOp::canonical(d)?)
    } else if let Some(s) = u.strip_prefix("seed:") {
        let seed: u64 = s
            .parse()
            .map_err(|_| usage(format!("--u seed:N needs an integer, got '{s}'")))?;
        Ok(random_antisym_unitary(d, seed)?)
    } else {
        Err(usage(format!("--u must be 'u0' or 'seed:N', got '{u}'")))
    }
}

fn build_map(a: &MapArgs) -> Result<LinMap, Failure> {
    match a.map.as_str() {
        "robertson" => {
            if a.d != 4 {
                return Err(usage("the robertson map is defined on d = 4"));
            }
            Ok(robertson())
        }
        "reduction" => Ok(reduction_map(a.d)?),
        "trace" => Ok(trace_map(a.d)?),
        "bh" => Ok(breuer_hall(&antisym_arg(&a.u, a.d)?, true)?),
        "chi" => {
            let x = a.x.ok_or_else(|| usage("chi needs --x"))?;
            let y = a.y.ok_or_else(|| usage("chi needs --y"))?;
            Ok(chi_map(x, y, &antisym_arg(&a.u, a.d)?)?)
        }
        other => Err(usage(format!(
            "unknown map '{other}'; expected robertson | reduction | trace | bh | chi"
        ))),
    }
}

fn build_state(name: &str) -> Result<BipState, Failure> {
    match name {
        "ha" => Ok(rho_ha(HaVariant::Dim4)),
        "ha3" => Ok(rho_ha(HaVariant::Dim3)),
        "new" => Ok(rho_new()),
        "ha-gamma" => Ok(gamma_conjugate(&rho_ha(HaVariant::Dim4), GammaSide::SecondFactor)?),
        "new-gamma" => Ok(gamma_conjugate(&rho_new(), GammaSide::SecondFactor)?),
        other if Path::new(other).exists() => {
            let m = matrixfile::read_file(other)?;
            let n = m.rows;
            let d = (n as f64).sqrt().round() as usize;
            if d * d != n || m.cols != n {
                return Err(Failure::Run(format!(
                    "state file must hold a square d²x d² matrix, got {}x{}",
                    m.rows, m.cols
                )));
            }
            Ok(BipState::new(BipOp::new(d, d, m)?, true)?)
        }
        other => Err(usage(format!(
            "unknown state '{other}' (no builtin of that name and no such file); builtins: ha, ha3, new, ha-gamma, new-gamma"
        ))),
    }
}

/// Schmidt certificates for the builtin states that carry them.
fn state_certs(name: &str) -> Result<Option<(SchmidtCertificate, SchmidtCertificate)>, Failure> {
    match name {
        "ha" => Ok(Some(ha_schmidt_certificates())),
        "ha-gamma" => {
            let gamma = CMat::diag_real(&[1.0, 1.0, -1.0, -1.0]);
            let (c, cpt) = ha_schmidt_certificates();
            Ok(Some((
                c.map_second_factor(4, 4, &gamma)?,
                cpt.map_second_factor(4, 4, &gamma)?,
            )))
        }
        _ => Ok(None),
    }
}

fn print_certificate(res: &CertificateResult) {
    println!("pairing: {}", res.pairing_value);
    println!("psd: {}", res.state_checks.psd);
    println!("ppt: {}", res.state_checks.ppt);
    if let Some(v) = res.state_checks.sn_cert_state {
        println!("cert_state: {}", if v { "verified" } else { "rejected" });
    }
    if let Some(v) = res.state_checks.sn_cert_pt {
        println!("cert_pt: {}", if v { "verified" } else { "rejected" });
    }
    println!("conclusion: {}", res.conclusion.label());
}

fn region_csv(report: &RegionReport) -> String {
    let mut s = String::new();
    s.push_str(&format!("# atomic boundary: x+y={}\n", report.boundary_atomic));
    s.push_str(&format!(
        "# indecomposable boundary: x+y={}\n",
        report.boundary_indec
    ));
    s.push_str("x,y,label\n");
    for (x, y, c) in &report.grid {
        s.push_str(&format!("{x},{y},{}\n", c.label()));
    }
    s
}

/// Render the region CSV as an SVG heat map. A pure function of the CSV text:
/// identical CSV input yields identical SVG bytes.
fn region_svg(csv: &str) -> Result<String, Failure> {
    let mut boundaries: Vec<f64> = Vec::new();
    let mut rows: Vec<(f64, f64, String)> = Vec::new();
    for line in csv.lines() {
        let line = line.trim();
        if line.is_empty() || line == "x,y,label" {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            if let Some((_, v)) = rest.split_once("x+y=") {
                boundaries.push(
                    v.trim()
                        .parse()
                        .map_err(|_| Failure::Run(format!("bad boundary metadata '{line}'")))?,
                );
            }
            continue;
        }
        let parts: Vec<&str> = line.split(',').collect();
        if parts.len() != 3 {
            return Err(Failure::Run(format!("bad CSV row '{line}'")));
        }
        let x: f64 = parts[0]
            .parse()
            .map_err(|_| Failure::Run(format!("bad x in '{line}'")))?;
        let y: f64 = parts[1]
            .parse()
            .map_err(|_| Failure::Run(format!("bad y in '{line}'")))?;
        rows.push((x, y, parts[2].to_string()));
    }
    let n = (rows.len() as f64).sqrt().round() as usize;
    if n < 2 || n * n != rows.len() {
        return Err(Failure::Run(format!(
            "region CSV must hold an n×n grid, got {} rows",
            rows.len()
        )));
    }

    const SIZE: f64 = 480.0;
    const MARGIN: f64 = 40.0;
    let cell = SIZE / n as f64;
    let px = |x: f64| MARGIN + x * SIZE;
    let py = |y: f64| MARGIN + (1.0 - y) * SIZE;
    let fill = |label: &str| match label {
        "atomic" => "#b2182b",
        "indecomposable" => "#ef8a62",
        "witness-only" => "#fddbc7",
        _ => "#e0e0e0",
    };

    let total = SIZE + 2.0 * MARGIN;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">\n"
    ));
    s.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{total}\" height=\"{total}\" fill=\"white\"/>\n"
    ));
    for (x, y, label) in &rows {
        s.push_str(&format!(
            "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>\n",
            px(*x) - cell / 2.0,
            py(*y) - cell / 2.0,
            cell,
            cell,
            fill(label)
        ));
    }
    for b in &boundaries {
        // the line x + y = b clipped to the unit square
        let (x0, y0, x1, y1) = if *b <= 1.0 {
            (0.0, *b, *b, 0.0)
        } else {
            (b - 1.0, 1.0, 1.0, b - 1.0)
        };
        s.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n",
            px(x0),
            py(y0),
            px(x1),
            py(y1)
        ));
        s.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"13\">x+y={b}</text>\n",
            px(x1.min(1.0)) - 78.0,
            py(y1.max(0.0)) - 8.0
        ));
    }
    s.push_str(&format!(
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{SIZE}\" height=\"{SIZE}\" fill=\"none\" stroke=\"black\"/>\n"
    ));
    s.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"13\">x</text>\n",
        MARGIN + SIZE / 2.0,
        total - 10.0
    ));
    s.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"13\">y</text>\n",
        12.0,
        MARGIN + SIZE / 2.0
    ));
    s.push_str("</svg>\n");
    Ok(s)
}

fn dispatch(cli: Cli) -> Result<i32, Failure> {
    match cli.cmd {
        Cmd::Witness { cmd } => match cmd {
            WitnessCmd::Build { map, out } => {
                let m = build_map(&map)?;
                let w = choi(&m)?;
                println!("label: {}", w.source_label);
                println!("dims: {0}x{0} -> {1}x{1}", m.d, m.d * m.d);
                println!("trace: {}", w.trace());
                println!("min_eig: {}", w.min_eig());
                println!("candidate: {}", w.is_candidate());
                if let Some(path) = out {
                    matrixfile::write_file(&path, &w.op.mat)?;
                    println!("wrote: {}", path.display());
                }
                Ok(0)
            }
            WitnessCmd::Spectrum { map } => {
                let w = choi(&build_map(&map)?)?;
                for v in &w.spectrum {
                    println!("{v}");
                }
                Ok(0)
            }
        },
        Cmd::Pair { map, state } => {
            let m = build_map(&map)?;
            let s = build_state(&state)?;
            let v = pair(&s.op, &m)?;
            println!("{v}");
            Ok(0)
        }
        Cmd::Ppt { state, tol } => {
            let s = build_state(&state)?;
            let rep = ppt_check(&s, tol)?;
            println!("psd: {}", rep.is_psd);
            println!("ppt: {}", rep.is_ppt);
            println!("min_eig: {}", rep.min_eig);
            println!("min_eig_pt: {}", rep.min_eig_pt);
            Ok(if rep.is_psd && rep.is_ppt { 0 } else { 1 })
        }
        Cmd::Certify { cmd } => match cmd {
            CertifyCmd::Atomic { map, state, tol } => {
                let m = build_map(&map)?;
                let s = build_state(&state)?;
                let (c, cpt) = state_certs(&state)?.ok_or_else(|| {
                    usage(format!(
                        "state '{state}' carries no Schmidt certificates; atomic certification needs ha or ha-gamma"
                    ))
                })?;
                let res = atomicity_certificate(&m, &s, &c, &cpt, tol)?;
                print_certificate(&res);
                Ok(if res.conclusion == Conclusion::AtomicCertified {
                    0
                } else {
                    1
                })
            }
            CertifyCmd::Indec { map, state, tol } => {
                let m = build_map(&map)?;
                let s = build_state(&state)?;
                let res = indecomposability_certificate(&m, &s, tol)?;
                print_certificate(&res);
                Ok(
                    if matches!(
                        res.conclusion,
                        Conclusion::AtomicCertified | Conclusion::IndecomposableCertified
                    ) {
                        0
                    } else {
                        1
                    },
                )
            }
        },
        Cmd::Region {
            grid,
            u,
            out,
            svg,
        } => {
            if grid < 2 {
                return Err(usage("--grid must be at least 2"));
            }
            let uop = antisym_arg(&u, 4)?;
            let report = region_scan(&uop, grid, &canonical_region_states())?;
            let csv = region_csv(&report);
            if let Some(path) = &svg {
                std::fs::write(path, region_svg(&csv)?)?;
            }
            match out {
                Some(path) => std::fs::write(path, csv)?,
                None => print!("{csv}"),
            }
            Ok(0)
        }
        Cmd::Minimize {
            map,
            iters,
            step,
            seed,
        } => {
            let m = build_map(&map)?;
            let w = choi(&m)?;
            let res = minimize_over_ppt(&w, iters, step, seed)?;
            let rep = ppt_check(&res.rho_star, 1e-9)?;
            println!("minimum: {}", res.min_value);
            println!("converged: {}", res.converged);
            println!("accepted_steps: {}", res.history.len());
            println!("state_psd: {}", rep.is_psd);
            println!("state_ppt: {}", rep.is_ppt);
            Ok(0)
        }
        Cmd::Equivalence {
            trials,
            samples,
            seed,
        } => {
            let id = verify_bh_robertson_equivalence(&CMat::identity(4), samples, seed)?;
            let mut all_pass = id.pass;
            let mut worst = id.max_residual;
            println!(
                "identity: residual {}, sign relations {}",
                id.max_residual,
                match id.sign_residual {
                    Some(r) if r == 0.0 => "exact".to_string(),
                    Some(r) => format!("residual {r}"),
                    None => "not checked".to_string(),
                }
            );
            for t in 0..trials {
                let v = random_orthogonal(4, seed.wrapping_add(1 + t as u64));
                let rep = verify_bh_robertson_equivalence(&v, samples, seed.wrapping_add(10_000 + t as u64))?;
                all_pass &= rep.pass;
                worst = worst.max(rep.max_residual);
            }
            println!("trials: {trials}, max residual {worst}");
            println!("pass: {all_pass}");
            Ok(if all_pass { 0 } else { 1 })
        }
        Cmd::Selftest => {
            let results = selftest::run_all();
            let mut failed = 0usize;
            for r in &results {
                println!(
                    "{} {} - {}",
                    if r.pass { "ok  " } else { "FAIL" },
                    r.name,
                    r.detail
                );
                if !r.pass {
                    failed += 1;
                }
            }
            println!("{} checks: {} passed, {} failed", results.len(), results.len() - failed, failed);
            Ok(if failed == 0 { 0 } else { 1 })
        }
    }
}
