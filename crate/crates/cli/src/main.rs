use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use hypertope::cgroups::{
    check_independent, check_ip, check_ip_plus, inverting_automorphism_exists, IpReport,
};
use hypertope::checks::{
    classify, diagram_dot, Check, ClassificationReport, ClassifyOptions, Status, Verdict,
};
use hypertope::families::{reproduce_tables, sweep, FamiliesConfig, FamilySpec};
use hypertope::input::{parse_input, Generators};
use hypertope::{Caps, CosetGeometry, Error, Exec};

const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "hypertope",
    version,
    about = "Coset geometries, intersection properties and chirality of hypertopes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Largest number of cosets defined during enumeration.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_cosets: Option<u64>,
    /// Largest subgroup index for which a coset action is built.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_index: Option<u64>,
    /// Largest order of the smaller group in an intersection.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    cap_intersection: Option<u64>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Stop the classification at the first failed rung.
    #[arg(long, global = true)]
    short_circuit: bool,
    /// Run every loop on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify the geometry of a C-group (involutions) or of the rotation construction.
    Classify {
        input: PathBuf,
        /// Write the incidence graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Intersection property of a C-group.
    Ip { input: PathBuf },
    /// Intersection property of the rotations (or of the rotation subgroup).
    IpPlus { input: PathBuf },
    /// Rotation criterion for chirality.
    Chirality { input: PathBuf },
    /// Reproduce the tables of `{{6,3}_s,{3,p}}` polytopes and `{(3,3,3)_s,p}` hypertopes.
    Tables,
    /// Build and classify one family member: map63, hyper333, gplus_pab or poly63p.
    Family {
        name: String,
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        a: Option<u32>,
        #[arg(long)]
        b: Option<u32>,
        #[arg(long)]
        c: Option<u32>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Export the incidence graph and the diagram.
    Export {
        input: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write the Coxeter diagram (or B-diagram for rotations) as DOT.
        #[arg(long)]
        diagram: Option<PathBuf>,
    },
    /// Classify every member of the grids in a families config.
    Sweep {
        #[arg(default_value = "families.toml")]
        config: PathBuf,
    },
}

impl Cli {
    fn caps(&self, base: Caps) -> Caps {
        Caps {
            max_cosets: self.max_cosets.map_or(base.max_cosets, |v| v as usize),
            index: self.cap_index.map_or(base.index, |v| v as usize),
            intersection: self.cap_intersection.unwrap_or(base.intersection),
        }
    }

    fn options(&self, caps: Caps) -> ClassifyOptions {
        ClassifyOptions {
            caps,
            exec: if self.sequential {
                Exec::Sequential
            } else {
                Exec::default()
            },
            short_circuit: self.short_circuit,
            ..ClassifyOptions::default()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let inconclusive = e
                .downcast_ref::<Error>()
                .is_some_and(Error::is_inconclusive);
            ExitCode::from(if inconclusive {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_INPUT
            })
        }
    }
}

fn load(path: &Path, caps: &Caps) -> anyhow::Result<Generators> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let input = parse_input(&text).with_context(|| format!("in {}", path.display()))?;
    Ok(input.generators(caps)?)
}

fn write_file(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    let caps = cli.caps(Caps::default());
    match &cli.cmd {
        Cmd::Classify { input, dot } => {
            let gens = load(input, &caps)?;
            let geom = gens.geometry(&caps)?;
            if let Some(path) = dot {
                write_file(path, &geom.to_dot())?;
            }
            let report = classify(&geom, &cli.options(caps))?;
            emit_report(cli, &report)?;
            Ok(report_exit(&report))
        }
        Cmd::Ip { input } => {
            let c = match load(input, &caps)? {
                Generators::Involutions(c) => c,
                Generators::Rotations(_) => bail!(
                    "{}: the intersection property needs involutions",
                    input.display()
                ),
            };
            let report = check_ip(&c, caps.intersection.into())?;
            emit_ip(cli, "IP", &report)
        }
        Cmd::IpPlus { input } => {
            let gens = load(input, &caps)?;
            let report = check_ip_plus(&gens.rotations(), caps.intersection.into())?;
            emit_ip(cli, "IP+", &report)
        }
        Cmd::Chirality { input } => {
            let gens = load(input, &caps)?;
            chirality(cli, &gens.rotations(), caps)
        }
        Cmd::Tables => {
            let report = reproduce_tables(&cli.options(caps));
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.to_text());
            }
            Ok(if report.any_inconclusive() {
                EXIT_INCONCLUSIVE
            } else if report.all_match() {
                0
            } else {
                EXIT_FAIL
            })
        }
        Cmd::Family {
            name,
            p,
            a,
            b,
            c,
            dot,
        } => {
            let spec = FamilySpec::parse(name, *p, *a, *b, *c)?;
            if spec.is_deferred() {
                println!("{spec}: deferred (p = 6 is outside the tabulated range)");
                return Ok(0);
            }
            let built = spec.build(&caps)?;
            if let Some(path) = dot {
                write_file(path, &built.geometry.to_dot())?;
            }
            let report = classify(&built.geometry, &cli.options(caps))?;
            if !cli.json {
                println!("{spec}: presented group of order {}", built.presented_order);
                if spec.is_degenerate() {
                    println!("note: degenerate parameters, the quotient is not thin");
                }
            }
            emit_report(cli, &report)?;
            Ok(report_exit(&report))
        }
        Cmd::Export {
            input,
            dot,
            diagram,
        } => {
            let gens = load(input, &caps)?;
            let geom = gens.geometry(&caps)?;
            let graph = geom.to_dot();
            match dot {
                Some(path) => write_file(path, &graph)?,
                None if !cli.json && diagram.is_none() => print!("{graph}"),
                None => {}
            }
            if let Some(path) = diagram {
                let text = match &gens {
                    Generators::Involutions(c) => c.coxeter_dot(),
                    Generators::Rotations(c) => c.bdiagram_dot(),
                };
                write_file(path, &text)?;
            }
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&geom.summary(cli.options(caps).exec))?
                );
            }
            Ok(0)
        }
        Cmd::Sweep { config } => {
            let text = fs::read_to_string(config)
                .with_context(|| format!("reading {}", config.display()))?;
            let cfg =
                FamiliesConfig::parse(&text).with_context(|| format!("in {}", config.display()))?;
            let caps = cli.caps(cfg.caps);
            let mut specs = Vec::new();
            for grid in &cfg.sweep {
                specs.extend(grid.specs()?);
            }
            let outcomes = sweep(&specs, &cli.options(caps));
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&outcomes)?);
            } else {
                for o in &outcomes {
                    let verdict = match (&o.verdict, &o.error, o.deferred) {
                        (_, _, true) => "deferred".to_string(),
                        (Some(v), _, _) => v.to_string(),
                        (None, Some(e), _) => format!("inconclusive: {e}"),
                        (None, None, _) => "-".to_string(),
                    };
                    let order = o.presented_order.map_or("-".into(), |n| n.to_string());
                    let rule = match o.toroidal_rule_holds {
                        Some(true) => "  rule ok",
                        Some(false) => "  RULE VIOLATED",
                        None => "",
                    };
                    println!(
                        "{:<28} order {:>8}  {verdict}{rule}",
                        o.spec.to_string(),
                        order
                    );
                }
            }
            Ok(
                if outcomes
                    .iter()
                    .any(|o| o.toroidal_rule_holds == Some(false))
                {
                    EXIT_FAIL
                } else if outcomes.iter().any(|o| o.error.is_some()) {
                    EXIT_INCONCLUSIVE
                } else {
                    0
                },
            )
        }
    }
}

fn chirality(cli: &Cli, plus: &hypertope::CPlusGroup, caps: Caps) -> anyhow::Result<u8> {
    let independent = check_independent(plus);
    let ip_plus = check_ip_plus(plus, caps.intersection.into())?;
    let inverting = inverting_automorphism_exists(plus);
    let geom = CosetGeometry::from_cplus(plus, &caps)?;
    let report = classify(&geom, &cli.options(caps))?;
    let by_rotations = if inverting.exists {
        "regular"
    } else {
        "chiral"
    };
    if cli.json {
        let value = serde_json::json!({
            "independent": independent,
            "ip_plus": ip_plus,
            "inverting_automorphism": inverting,
            "by_rotations": by_rotations,
            "verdict": report.verdict,
        });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("rotations independent: {}", yes_no(independent.pass));
        if !independent.pass {
            println!("  dependent: {:?}", independent.offending);
        }
        println!("IP+: {}", if ip_plus.pass { "PASS" } else { "FAIL" });
        println!(
            "inverting automorphism: {} (|D| = {}, |G+| = {})",
            yes_no(inverting.exists),
            inverting.graph_order,
            inverting.group_order
        );
        println!("by rotations: {by_rotations}");
        println!("verdict: {}", report.summary());
    }
    let agrees = matches!(
        (report.verdict, inverting.exists),
        (Verdict::RegularHypertope, true) | (Verdict::ChiralHypertope, false)
    );
    Ok(if has_inconclusive(&report) {
        EXIT_INCONCLUSIVE
    } else if agrees && independent.pass && ip_plus.pass {
        0
    } else {
        EXIT_FAIL
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fmt_set(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn emit_ip(cli: &Cli, name: &str, report: &IpReport) -> anyhow::Result<u8> {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(report)?);
    } else if report.pass {
        println!("{name}: PASS");
    } else {
        println!("{name}: FAIL");
        for f in &report.failures {
            println!(
                "  I = {}, J = {}: intersection of order {}, expected {}; witness {}",
                fmt_set(&f.i),
                fmt_set(&f.j),
                f.intersection_order,
                f.expected_order,
                f.witness
            );
        }
    }
    Ok(if report.pass { 0 } else { EXIT_FAIL })
}

fn checks(r: &ClassificationReport) -> Vec<(&'static str, &Check)> {
    let mut v = vec![
        ("geometry", &r.geometry),
        ("firm", &r.firm),
        ("thin", &r.thin),
        ("connected", &r.connected),
        ("residually connected", &r.residually_connected),
        (
            "residually connected (subgroups)",
            &r.residually_connected_dehon,
        ),
        ("strongly chamber-connected", &r.strongly_chamber_connected),
        ("flag-transitive", &r.flag_transitive),
    ];
    if let Some(c) = &r.flag_transitive_rank3 {
        v.push(("flag-transitive (rank 3)", c));
    }
    v
}

fn has_inconclusive(r: &ClassificationReport) -> bool {
    checks(r)
        .iter()
        .any(|(_, c)| c.status == Status::Inconclusive)
}

fn report_exit(r: &ClassificationReport) -> u8 {
    if has_inconclusive(r) {
        EXIT_INCONCLUSIVE
    } else if matches!(
        r.verdict,
        Verdict::Hypertope
            | Verdict::RegularHypertope
            | Verdict::ChiralHypertope
            | Verdict::TwoOrbitNonChiral
    ) {
        0
    } else {
        EXIT_FAIL
    }
}

fn emit_report(cli: &Cli, r: &ClassificationReport) -> anyhow::Result<()> {
    if cli.json {
        println!("{}", serde_json::to_string_pretty(r)?);
    } else {
        print!("{}", render(r, ""));
    }
    Ok(())
}

fn render(r: &ClassificationReport, pad: &str) -> String {
    let mut out = format!("{pad}verdict: {}\n", r.summary());
    out += &format!(
        "{pad}rank {}, group order {}, elements {:?}, chambers {}\n",
        r.rank, r.group_order, r.element_counts, r.chamber_count
    );
    for (name, c) in checks(r) {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Refused => "REFUSED",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Skipped => "SKIPPED",
        };
        out += &format!("{pad}  {name:<34} {status}");
        if let Some(w) = &c.witness {
            out += &format!("  {w}");
        }
        out.push('\n');
    }
    out += &format!(
        "{pad}chamber orbits: {} {:?}, free: {}, adjacent chambers alternate: {}\n",
        r.chamber_orbit_count,
        r.chamber_orbit_sizes,
        yes_no(r.chamber_action_free),
        yes_no(r.adjacent_chambers_alternate)
    );
    if let (Some(b), Some(k)) = (r.borel_order, r.kernel_order) {
        out += &format!("{pad}Borel subgroup order {b}, kernel order {k}\n");
    }
    if let Some(d) = &r.buekenhout_diagram {
        out += &format!("{pad}Buekenhout diagram:\n");
        for line in diagram_dot(d).lines() {
            out += &format!("{pad}  {line}\n");
        }
    }
    if let Some(a) = &r.automorphisms {
        out += &format!(
            "{pad}automorphism group: order {}, {} chamber orbit(s), maps to adjacent chambers {:?}\n",
            a.group_order, a.chamber_orbit_count, a.maps_to_adjacent
        );
    }
    if let Some(rot) = &r.rotations {
        out += &format!("{pad}distinguished rotations:\n");
        for (i, a) in rot.rotations.iter().enumerate() {
            out += &format!("{pad}  a{} = {a}\n", i + 1);
        }
        if let Some(inv) = &rot.inverting_automorphism {
            out += &format!("{pad}  inverting automorphism: {}\n", yes_no(inv.exists));
        }
    }
    for note in &r.notes {
        out += &format!("{pad}note: {note}\n");
    }
    if let Some(e) = &r.extended {
        out += &format!("{pad}extended by automorphisms:\n");
        out += &render(e, &format!("{pad}    "));
    }
    if let Some(q) = &r.quotient {
        out += &format!("{pad}quotient by the kernel:\n");
        out += &render(q, &format!("{pad}    "));
    }
    out
}
