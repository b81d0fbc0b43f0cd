use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use specp_core::hall::{enumerate_basic, witt_chi, MAX_WEIGHT};
use specp_core::pc::families::{abelian, extraspecial, extraspecial_central_product, extraspecial_times_cyclic, Exponent};
use specp_core::pc::PcPresentation;
use specp_core::report::{
    emit, emit_grid, run, run_grid, Family, Format, GridReport, GridRequest, GroupSpec, InvariantReport, Section,
    Status,
};
use specp_core::wedge::{oracle_square, square, Mode};
use specp_core::Error;

const EXIT_MISMATCH: u8 = 2;
const EXIT_UNCERTIFIED: u8 = 3;
const EXIT_USAGE: u8 = 4;

/// Multipliers, exterior and tensor squares of class-two p-groups.
#[derive(Parser)]
#[command(name = "specp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of one group and compare them with the closed forms.
    Run(RunArgs),
    /// Run a grid of family members.
    Grid(GridArgs),
    /// Witt numbers and the ordered basic commutators.
    Witt {
        #[arg(short = 'n')]
        n: u32,
        #[arg(short = 'd')]
        d: u64,
    },
    /// Compare the symbolic squares with the table oracle on small groups.
    Oracle {
        #[arg(long, default_value_t = 81)]
        max_order: u128,
    },
}

#[derive(Args)]
struct Output {
    /// Sections to compute: structure, multiplier, wedge, tensor, capability.
    #[arg(long, value_delimiter = ',')]
    what: Vec<String>,
    /// Compute every section (the default when --what is absent).
    #[arg(long)]
    all: bool,
    #[arg(long, default_value = "json")]
    format: String,
}

impl Output {
    fn sections(&self) -> Result<Vec<Section>, Error> {
        if self.all || self.what.is_empty() {
            return Ok(Section::ALL.to_vec());
        }
        self.what.iter().map(|s| s.parse()).collect()
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, conflicts_with = "input")]
    family: Option<String>,
    #[arg(short = 'd')]
    d: Option<usize>,
    #[arg(short = 'p', default_value_t = 3)]
    p: u32,
    #[arg(short = 't')]
    t: Option<usize>,
    /// Presentation file.
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct GridArgs {
    #[arg(short = 'p', value_delimiter = ',', default_value = "3")]
    p: Vec<u32>,
    #[arg(short = 'd', value_delimiter = ',', default_value = "3")]
    d: Vec<usize>,
    #[arg(short = 't', value_delimiter = ',', default_value = "0")]
    t: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "rank-full")]
    family: Vec<String>,
    #[command(flatten)]
    out: Output,
}

fn exit_for(reports: &[&InvariantReport]) -> u8 {
    if reports.iter().any(|r| r.count(Status::Mismatch) > 0) {
        EXIT_MISMATCH
    } else if reports.iter().any(|r| !r.certified) {
        EXIT_UNCERTIFIED
    } else {
        0
    }
}

fn cmd_run(a: &RunArgs) -> Result<u8, Error> {
    let spec = match (&a.family, &a.input) {
        (Some(f), None) => {
            let d = a.d.ok_or_else(|| Error::Usage("--family needs -d".into()))?;
            GroupSpec::family(f.parse::<Family>()?, d, a.p, a.t)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
            GroupSpec::Text { name: path.display().to_string(), text }
        }
        _ => return Err(Error::Usage("give exactly one of --family or --input".into())),
    };
    let format: Format = a.out.format.parse()?;
    let report = run(&spec, &a.out.sections()?)?;
    print!("{}", emit(&report, format));
    Ok(exit_for(&[&report]))
}

fn cmd_grid(a: &GridArgs) -> Result<u8, Error> {
    let families = a.family.iter().map(|f| f.parse()).collect::<Result<Vec<Family>, _>>()?;
    let format: Format = a.out.format.parse()?;
    let req = GridRequest {
        primes: a.p.clone(),
        ds: a.d.clone(),
        ts: a.t.clone(),
        families,
        sections: a.out.sections()?,
    };
    let grid: GridReport = run_grid(&req);
    print!("{}", emit_grid(&grid, format));
    Ok(exit_for(&grid.reports.iter().collect::<Vec<_>>()))
}

fn cmd_witt(n: u32, d: u64) -> Result<u8, Error> {
    if n == 0 || d == 0 {
        return Err(Error::Usage("-n and -d must be at least 1".into()));
    }
    println!("chi_{n}({d}) = {}", witt_chi(n, d));
    if n as usize <= MAX_WEIGHT {
        let basis = enumerate_basic(d as usize, n as usize)?;
        let counts: Vec<String> = basis.counts().iter().map(|c| c.to_string()).collect();
        println!("basic commutators of weight <= {n}: {} ({})", basis.elements.len(), counts.join(" + "));
        print!("{basis}");
    }
    Ok(0)
}

fn oracle_groups(p: u32) -> Vec<(&'static str, PcPresentation)> {
    let mut out = Vec::new();
    let mut add = |name, g: Result<PcPresentation, Error>| {
        if let Ok(g) = g {
            out.push((name, g));
        }
    };
    add("Z_p", abelian(p, &[1]));
    add("Z_p^2", abelian(p, &[1, 1]));
    add("Z_p^2 + Z_p", abelian(p, &[2, 1]));
    add("extraspecial p^3, exponent p", extraspecial(p, Exponent::P));
    add("extraspecial p^3, exponent p^2", extraspecial(p, Exponent::P2));
    add("extraspecial (exp p) x Z_p", extraspecial_times_cyclic(p, Exponent::P));
    add("extraspecial (exp p^2) x Z_p", extraspecial_times_cyclic(p, Exponent::P2));
    add("extraspecial o Z_p^2", extraspecial_central_product(p));
    out
}

fn cmd_oracle(max_order: u128) -> Result<u8, Error> {
    let mut code = 0;
    for (name, g) in oracle_groups(3) {
        let order = g.order().unwrap_or(u128::MAX);
        if order > max_order {
            println!("skip   {name} (order {order})");
            continue;
        }
        for mode in [Mode::Exterior, Mode::Tensor] {
            let s = square(&g, mode)?;
            let o = oracle_square(&g, mode)?;
            let ok = s.structure == o.structure && s.kernel == o.kernel && s.nabla == o.nabla;
            if !ok {
                code = EXIT_MISMATCH;
            } else if !s.certified && code == 0 {
                code = EXIT_UNCERTIFIED;
            }
            println!(
                "{}  {name} {mode}: symbolic {} (kernel {}), oracle {} (kernel {})",
                if ok { "ok    " } else { "DIFFER" },
                s.structure,
                s.kernel,
                o.structure,
                o.kernel
            );
        }
    }
    Ok(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_USAGE } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Grid(a) => cmd_grid(a),
        Command::Witt { n, d } => cmd_witt(*n, *d),
        Command::Oracle { max_order } => cmd_oracle(*max_order),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("specp: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
