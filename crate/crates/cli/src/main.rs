use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kaclab::cohomology::{
    h1_adjoint, h1_inner_form, nth_root_classes, real_form_table, H1Result, RootsResult,
};
use kaclab::kac_labelings::{enumerate_kn, filter_for_central, filter_matching_q, KacLabeling};
use kaclab::lattice::{intermediate_lattices, CentralElement, GroupDatum, GroupSpec};
use kaclab::rational::{format_rational, parse_rational};
use kaclab::root_system::SimpleType;
use kaclab::torus_oracle::{cross_check, Budget, CrossCheckReport};
use kaclab::{Error, ErrorKind};

#[derive(Parser)]
#[command(
    name = "kaclab",
    version,
    about = "Real Galois cohomology of compact groups via Kac labelings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kac n-labelings of the extended diagram, optionally filtered by z or q.
    Labelings {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Central element as comma-separated values, one per stored generator.
        #[arg(long, conflicts_with = "q")]
        z: Option<String>,
        /// Keep labelings congruent to this one.
        #[arg(long)]
        q: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// H^1 of the inner form twisted by q.
    H1 {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        q: String,
        #[command(flatten)]
        out: OutArgs,
    },
    /// H^1 of the adjoint group of the spec's type.
    AdjointH1 {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Conjugacy classes of n-th roots of a central element.
    Roots {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        z: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Admissible twists q of a simple type, one per P^vee/Q^vee-orbit.
    Forms {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Compare labeling orbits with Weyl orbits on the torus.
    OracleCheck {
        #[command(flatten)]
        spec: OptionalSpecArgs,
        /// Every simple type up to this rank, every lattice, every z.
        #[arg(long, conflicts_with_all = ["preset", "spec"])]
        sweep: Option<usize>,
        /// Single n; default runs 1, 2, 3.
        #[arg(long)]
        n: Option<u32>,
        /// Single z; default runs every central element.
        #[arg(long)]
        z: Option<String>,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SpecArgs {
    /// sc:<types>, ad:<types>, halfspin:D<2k>, so:<B|D><l>; join types with `+`.
    #[arg(long)]
    preset: Option<String>,
    /// JSON file {"components": [...], "generators": [[...], ...]}.
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalSpecArgs {
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    spec: Option<PathBuf>,
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn exit_code(kind: ErrorKind) -> u8 {
    match kind {
        ErrorKind::Usage => 2,
        ErrorKind::Spec => 3,
        ErrorKind::Labeling => 4,
        ErrorKind::Budget => 5,
        ErrorKind::Internal => 6,
    }
}

fn load(preset: Option<&str>, file: Option<&PathBuf>) -> Result<GroupDatum, Error> {
    let spec = match (preset, file) {
        (Some(p), _) => GroupSpec::preset(p)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
            GroupSpec::from_json(&text)?
        }
        (None, None) => return Err(Error::Parse("one of --preset or --spec is required".into())),
    };
    for t in &spec.components {
        if let Some(alias) = t.alias_of() {
            eprintln!(
                "warning: {t} is the same root system as {alias}; results are reported for {t}"
            );
        }
    }
    spec.validate()
}

fn parse_z(datum: &GroupDatum, z: Option<&str>) -> Result<CentralElement, Error> {
    let Some(z) = z else {
        return Ok(datum.trivial_central());
    };
    let values = if z.trim().is_empty() {
        Vec::new()
    } else {
        z.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>, _>>()?
    };
    let z = CentralElement::new(values);
    datum.check_central(&z)?;
    Ok(z)
}

fn rationals(xs: &[kaclab::rational::Rational]) -> String {
    format!(
        "[{}]",
        xs.iter().map(format_rational).collect::<Vec<_>>().join(",")
    )
}

fn spec_line(datum: &GroupDatum) -> String {
    let f = datum.normalized_spec().to_file_format();
    let gens: Vec<String> = f
        .generators
        .iter()
        .map(|g| format!("[{}]", g.join(",")))
        .collect();
    format!(
        "group {} generators [{}]",
        f.components.join("+"),
        gens.join(",")
    )
}

fn h1_text(datum: &GroupDatum, r: &H1Result) -> String {
    let d = datum.diagram();
    let mut s = String::new();
    writeln!(s, "{}", spec_line(datum)).unwrap();
    writeln!(s, "q {} {}", r.q.to_display(d), r.q.to_machine()).unwrap();
    writeln!(s, "classes {}", r.classes.len()).unwrap();
    for (i, c) in r.classes.iter().enumerate() {
        let mark = if i == r.neutral_index { " neutral" } else { "" };
        writeln!(
            s,
            "{i} {} {} size {} u {}{mark}",
            c.representative.to_display(d),
            c.representative.to_machine(),
            c.members.len(),
            rationals(&c.witness)
        )
        .unwrap();
        for m in &c.members {
            writeln!(s, "  {} {}", m.to_display(d), m.to_machine()).unwrap();
        }
    }
    s
}

fn roots_text(datum: &GroupDatum, r: &RootsResult) -> String {
    let d = datum.diagram();
    let mut s = String::new();
    writeln!(s, "{}", spec_line(datum)).unwrap();
    writeln!(s, "z {} n {}", rationals(&r.z.values), r.n).unwrap();
    writeln!(s, "classes {}", r.classes.len()).unwrap();
    for (i, c) in r.classes.iter().enumerate() {
        writeln!(
            s,
            "{i} {} {} size {} t {}",
            c.representative.to_display(d),
            c.representative.to_machine(),
            c.members.len(),
            rationals(&c.torus_point.coords)
        )
        .unwrap();
    }
    s
}

fn report_text(r: &CrossCheckReport) -> String {
    let gens: Vec<String> = r
        .spec
        .generators
        .iter()
        .map(|g| format!("[{}]", g.join(",")))
        .collect();
    let status = match &r.mismatch {
        None => "verified".to_string(),
        Some(m) => format!("MISMATCH {m}"),
    };
    format!(
        "{} [{}] z {} n {}: labelings {} classes {} | torus points {} classes {} | {status}\n",
        r.spec.components.join("+"),
        gens.join(","),
        rationals(&r.z.values),
        r.n,
        r.labelings,
        r.labeling_classes,
        r.torus_points,
        r.torus_classes
    )
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Consistency(format!("serialization failed: {e}")))
}

fn labelings_json(datum: &GroupDatum, n: u32, ps: &[KacLabeling]) -> Value {
    let d = datum.diagram();
    json!({
        "spec": datum.normalized_spec().to_file_format(),
        "n": n,
        "count": ps.len(),
        "labelings": ps.iter().map(|p| json!({"labels": p.labels(), "display": p.to_display(d)})).collect::<Vec<_>>(),
    })
}

fn oracle_jobs(
    datum: &GroupDatum,
    n: Option<u32>,
    z: Option<&str>,
) -> Result<Vec<(CentralElement, u32)>, Error> {
    let zs = match z {
        Some(_) => vec![parse_z(datum, z)?],
        None => datum.enumerate_center(),
    };
    let ns: Vec<u32> = n.map_or_else(|| vec![1, 2, 3], |n| vec![n]);
    Ok(zs
        .into_iter()
        .flat_map(|z| ns.iter().map(move |&n| (z.clone(), n)))
        .collect())
}

fn run(cli: Cli) -> Result<(String, bool), Error> {
    match cli.command {
        Command::Labelings { spec, n, z, q, out } => {
            let datum = load(spec.preset.as_deref(), spec.spec.as_ref())?;
            if n == 0 {
                return Err(Error::Parse("--n must be positive".into()));
            }
            let mut ps = enumerate_kn(datum.diagram(), n);
            if let Some(q) = q {
                let q = KacLabeling::parse(datum.diagram(), &q)?;
                if q.n() != n {
                    return Err(Error::InvalidLabeling(format!(
                        "q is a {}-labeling, --n is {n}",
                        q.n()
                    )));
                }
                ps = filter_matching_q(&ps, &datum, &q)?;
            } else if z.is_some() {
                ps = filter_for_central(&ps, &datum, &parse_z(&datum, z.as_deref())?)?;
            }
            let text = match out.format {
                Format::Json => to_json(&labelings_json(&datum, n, &ps))?,
                Format::Text => ps.iter().map(|p| p.to_machine() + "\n").collect(),
            };
            Ok((text, true))
        }
        Command::H1 { spec, q, out } => {
            let datum = load(spec.preset.as_deref(), spec.spec.as_ref())?;
            let q = KacLabeling::parse(datum.diagram(), &q)?;
            let r = h1_inner_form(&datum, &q)?;
            let text = match out.format {
                Format::Json => to_json(&r)?,
                Format::Text => h1_text(&datum, &r),
            };
            Ok((text, true))
        }
        Command::AdjointH1 { spec, out } => {
            let datum = load(spec.preset.as_deref(), spec.spec.as_ref())?;
            let r = h1_adjoint(&datum.spec().components)?;
            let adjoint = GroupSpec::adjoint(datum.spec().components.clone()).validate()?;
            let text = match out.format {
                Format::Json => to_json(&r)?,
                Format::Text => h1_text(&adjoint, &r),
            };
            Ok((text, true))
        }
        Command::Roots { spec, n, z, out } => {
            let datum = load(spec.preset.as_deref(), spec.spec.as_ref())?;
            let z = parse_z(&datum, z.as_deref())?;
            let r = nth_root_classes(&datum, &z, n)?;
            let text = match out.format {
                Format::Json => to_json(&r)?,
                Format::Text => roots_text(&datum, &r),
            };
            Ok((text, true))
        }
        Command::Forms { spec, out } => {
            let datum = load(spec.preset.as_deref(), spec.spec.as_ref())?;
            let [ty]: [SimpleType; 1] = datum
                .spec()
                .components
                .clone()
                .try_into()
                .map_err(|_| Error::Parse("forms takes a single simple type".into()))?;
            let rows = real_form_table(ty)?;
            let text = match out.format {
                Format::Json => to_json(&json!({"type": ty.to_string(), "forms": rows}))?,
                Format::Text => rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        format!(
                            "{i} {} {} size {}{}\n",
                            r.display,
                            r.representative.to_machine(),
                            r.members.len(),
                            r.name.as_ref().map(|n| format!(" {n}")).unwrap_or_default()
                        )
                    })
                    .collect(),
            };
            Ok((text, true))
        }
        Command::OracleCheck {
            spec,
            sweep,
            n,
            z,
            out,
        } => {
            let budget = Budget::from_env()?;
            let mut reports = Vec::new();
            if let Some(max_rank) = sweep {
                for ty in SimpleType::all_up_to(max_rank) {
                    for s in intermediate_lattices(&[ty]) {
                        let datum = s.validate()?;
                        for (z, n) in oracle_jobs(&datum, n, None)? {
                            reports.push(cross_check(&datum, &z, n, &budget)?);
                        }
                    }
                }
            } else {
                let datum = load(spec.preset.as_deref(), spec.spec.as_ref())?;
                for (z, n) in oracle_jobs(&datum, n, z.as_deref())? {
                    reports.push(cross_check(&datum, &z, n, &budget)?);
                }
            }
            let ok = reports.iter().all(|r| r.verified);
            let text = match out.format {
                Format::Json => to_json(&json!({"verified": ok, "reports": reports}))?,
                Format::Text => {
                    let mut s: String = reports.iter().map(report_text).collect();
                    let bad = reports.iter().filter(|r| !r.verified).count();
                    writeln!(s, "{} checks, {bad} mismatches", reports.len()).unwrap();
                    s
                }
            };
            Ok((text, ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(exit_code(ErrorKind::Internal))
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.kind()))
        }
    }
}
