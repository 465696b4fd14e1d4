//! Command-line front end: enumeration, mapping, inversion, verification and
//! arc-diagram rendering. All subcommands read one JSON value or a
//! JSON-lines stream and write to a single output stream.

use crate::bijection::{f_map, g_map, l_map, BijectionError};
use crate::enumerate::{
    enumerate_antichains, enumerate_nc, verify_bijection, EnumerateError, RankBounds,
};
use crate::partitions::{
    permutation_to_partition, ArcPartition, GroundConvention, PartitionError, SignedPermutation,
};
use crate::roots::{canonicalize_antichain, Family, PositiveRoot, RootError, RootSystemId};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::A => Family::A,
            FamilyArg::B => Family::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// Nonnesting objects (antichains / arc diagrams with the 0 column).
    Nn,
    /// Noncrossing objects (canonical permutations / the signed display order).
    Nc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Root-system family.
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Rank: the number of simple roots (family A of rank k acts on [k+1]).
    #[arg(long)]
    pub rank: usize,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Debug, Parser)]
#[command(
    name = "coxbij",
    version,
    about = "Nonnesting and noncrossing partitions of Coxeter families A and B"
)]
pub struct CommandConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream every nonnesting or noncrossing object of a system.
    Enumerate {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value_t = KindArg::Nn)]
        kind: KindArg,
    },
    /// Apply the forward map to an antichain.
    Map {
        #[command(flatten)]
        sys: SystemArgs,
        /// Input path, or '-' for stdin.
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Apply the inverse map to a canonical noncrossing permutation.
    Invert {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Apply the crossing-to-nesting conversion (family A only).
    Lmap {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value = "-")]
        input: String,
    },
    /// Sweep a whole system and report the bijection checks.
    Verify {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Draw the arc diagram of a partition.
    Render {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value_t = KindArg::Nn)]
        kind: KindArg,
        #[arg(long, default_value = "-")]
        input: String,
    },
}

impl Command {
    /// The input path when the subcommand consumes one.
    pub fn input_path(&self) -> Option<&str> {
        match self {
            Command::Map { input, .. }
            | Command::Invert { input, .. }
            | Command::Lmap { input, .. }
            | Command::Render { input, .. } => Some(input),
            Command::Enumerate { .. } | Command::Verify { .. } => None,
        }
    }
}

/// Exit statuses: 0 success, 1 verification failure, 2 malformed input,
/// 3 domain error.
#[derive(Debug)]
enum CliError {
    Malformed(String),
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Malformed(_) => 2,
            CliError::Domain(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Malformed(m) | CliError::Domain(m) => m,
        }
    }
}

impl From<RootError> for CliError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NotAntichain(_, _) | RootError::DuplicateRoot(_) => {
                CliError::Domain(e.to_string())
            }
            _ => CliError::Malformed(e.to_string()),
        }
    }
}

impl From<BijectionError> for CliError {
    fn from(e: BijectionError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<PartitionError> for CliError {
    fn from(e: PartitionError) -> Self {
        CliError::Malformed(e.to_string())
    }
}

impl From<EnumerateError> for CliError {
    fn from(e: EnumerateError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Runs one command against an already-read input string, writing results to
/// `out`, and returns the process exit status.
pub fn run(config: &CommandConfig, input: &str, out: &mut dyn Write) -> i32 {
    match execute(config, input, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(out, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn execute(config: &CommandConfig, input: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let bounds = RankBounds::from_env();
    match &config.command {
        Command::Enumerate { sys, kind } => {
            let system = system_of(sys)?;
            bounds.check(system)?;
            match kind {
                KindArg::Nn => {
                    for a in enumerate_antichains(system, &bounds)? {
                        match sys.format {
                            FormatArg::Json => {
                                let _ = writeln!(out, "{}", serde_json::to_string(&a).unwrap());
                            }
                            FormatArg::Text => {
                                let _ = writeln!(out, "{}", antichain_text(&a));
                            }
                        }
                    }
                }
                KindArg::Nc => {
                    for p in enumerate_nc(system, &bounds)? {
                        match sys.format {
                            FormatArg::Json => {
                                let _ = writeln!(out, "{}", p.to_json_value());
                            }
                            FormatArg::Text => {
                                let _ = writeln!(out, "{}", p.cycle_notation());
                            }
                        }
                    }
                }
            }
            Ok(0)
        }
        Command::Map { sys, .. } => {
            let system = system_of(sys)?;
            for value in parse_stream(input)? {
                let antichain = antichain_from_value(system, &value)?;
                let word = f_map(&antichain);
                let product = word.product();
                let partition = permutation_to_partition(&product);
                match sys.format {
                    FormatArg::Json => {
                        let payload = serde_json::json!({
                            "word": word.factors(),
                            "permutation": product.to_json_value(),
                            "cycles_text": product.cycle_notation(),
                            "partition": partition.to_json_value(),
                        });
                        let _ = writeln!(out, "{payload}");
                    }
                    FormatArg::Text => {
                        let _ = writeln!(out, "word: {}", word.text());
                        let _ = writeln!(out, "cycles: {}", product.cycle_notation());
                        let _ = writeln!(out, "partition: {}", partition.text());
                    }
                }
            }
            Ok(0)
        }
        Command::Invert { sys, .. } => {
            let system = system_of(sys)?;
            for value in parse_stream(input)? {
                let perm = permutation_from_value(system, &value)?;
                let antichain = g_map(&perm)?;
                match sys.format {
                    FormatArg::Json => {
                        let _ = writeln!(out, "{}", serde_json::to_string(&antichain).unwrap());
                    }
                    FormatArg::Text => {
                        let _ = writeln!(out, "{}", antichain_text(&antichain));
                    }
                }
            }
            Ok(0)
        }
        Command::Lmap { sys, .. } => {
            let system = system_of(sys)?;
            for value in parse_stream(input)? {
                let partition = partition_from_value(system, &value)?;
                let image = l_map(&partition)?;
                match sys.format {
                    FormatArg::Json => {
                        let _ = writeln!(out, "{}", image.to_json_value());
                    }
                    FormatArg::Text => {
                        let _ = writeln!(out, "{}", image.text());
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { sys } => {
            let system = system_of(sys)?;
            let report = verify_bijection(system, &bounds)?;
            match sys.format {
                FormatArg::Json => {
                    let _ = writeln!(out, "{}", serde_json::to_string(&report).unwrap());
                }
                FormatArg::Text => {
                    let _ = writeln!(out, "system: {}", report.system);
                    let _ = writeln!(
                        out,
                        "counts: nn={} nc={} expected={}",
                        report.nn_count, report.nc_count, report.expected_count
                    );
                    let _ = writeln!(out, "bijective: {}", report.bijective);
                    let _ = writeln!(out, "triples_preserved: {}", report.triples_preserved);
                    let _ = writeln!(
                        out,
                        "lmap_agrees: {}",
                        report
                            .lmap_agrees
                            .map_or("n/a".to_string(), |b| b.to_string())
                    );
                    for f in &report.roundtrip_failures {
                        let _ = writeln!(out, "failure: {f}");
                    }
                }
            }
            Ok(if report.passed() { 0 } else { 1 })
        }
        Command::Render { sys, kind, .. } => {
            let system = system_of(sys)?;
            for value in parse_stream(input)? {
                let partition = partition_from_value(system, &value)?;
                let convention = match (partition.family(), kind) {
                    (Family::A, _) => GroundConvention::TypeA,
                    (Family::B, KindArg::Nn) => GroundConvention::BNonnesting,
                    (Family::B, KindArg::Nc) => GroundConvention::BNoncrossing,
                };
                let _ = write!(out, "{}", render_diagram(&partition, convention));
            }
            Ok(0)
        }
    }
}

fn system_of(sys: &SystemArgs) -> Result<RootSystemId, CliError> {
    RootSystemId::new(sys.family.into(), sys.rank).map_err(|e| CliError::Malformed(e.to_string()))
}

/// Parses the input as one JSON value, or as a JSON-lines stream when the
/// whole text is not a single value.
fn parse_stream(input: &str) -> Result<Vec<serde_json::Value>, CliError> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(CliError::Malformed("empty input".into()));
    }
    if let Ok(value) = serde_json::from_str(trimmed) {
        return Ok(vec![value]);
    }
    let mut values = Vec::new();
    for (lineno, line) in trimmed.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value = serde_json::from_str(line).map_err(|e| {
            CliError::Malformed(format!("line {}: invalid JSON: {e}", lineno + 1))
        })?;
        values.push(value);
    }
    Ok(values)
}

fn antichain_from_value(
    system: RootSystemId,
    value: &serde_json::Value,
) -> Result<crate::roots::Antichain, CliError> {
    let roots: Vec<PositiveRoot> = serde_json::from_value(value.clone())
        .map_err(|e| CliError::Malformed(format!("expected an array of roots: {e}")))?;
    for r in &roots {
        if r.system() != system {
            return Err(CliError::Malformed(format!(
                "root {r} belongs to {}, expected {system}",
                r.system()
            )));
        }
    }
    Ok(canonicalize_antichain(system, &roots)?)
}

fn permutation_from_value(
    system: RootSystemId,
    value: &serde_json::Value,
) -> Result<SignedPermutation, CliError> {
    // Accept a bare {"n":…,"cycles":…} object or a map-output wrapper.
    let value = value.get("permutation").unwrap_or(value);
    let perm = SignedPermutation::from_json_value(system.family, value)?;
    if perm.n() != system.ground_size() {
        return Err(CliError::Malformed(format!(
            "permutation degree {} does not match {system}",
            perm.n()
        )));
    }
    Ok(perm)
}

fn partition_from_value(
    system: RootSystemId,
    value: &serde_json::Value,
) -> Result<ArcPartition, CliError> {
    let partition = ArcPartition::from_json_value(value)?;
    if partition.family() != system.family || partition.n() != system.ground_size() {
        return Err(CliError::Malformed(format!(
            "partition ground does not match {system}"
        )));
    }
    Ok(partition)
}

fn antichain_text(a: &crate::roots::Antichain) -> String {
    let parts: Vec<String> = a.iter().map(|r| r.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Deterministic monospace drawing of an arc diagram: one label row, arcs
/// stacked above with vertical risers, nested arcs below their covers.
pub fn render_diagram(p: &ArcPartition, convention: GroundConvention) -> String {
    let labels = convention.labels(p.n());
    let mut anchor: BTreeMap<i64, usize> = BTreeMap::new();
    let mut label_row = String::new();
    for (i, &x) in labels.iter().enumerate() {
        if i > 0 {
            label_row.push(' ');
        }
        let s = x.to_string();
        anchor.insert(x, label_row.len() + s.len() - 1);
        label_row.push_str(&s);
    }

    let arcs = p.arcs(convention);
    // (left column, right column, position interval) per arc.
    let mut placed: Vec<(usize, usize, usize, usize, usize)> = Vec::new(); // c1, c2, p1, p2, level
    let mut order: Vec<(i64, i64)> = arcs;
    order.sort_by_key(|&(a, b)| {
        let (pa, pb) = (
            convention.position(a, p.n()),
            convention.position(b, p.n()),
        );
        (pb - pa, pa)
    });
    for (a, b) in order {
        let (pa, pb) = (
            convention.position(a, p.n()),
            convention.position(b, p.n()),
        );
        let (c1, c2) = (anchor[&a], anchor[&b]);
        let base = placed
            .iter()
            .filter(|&&(_, _, q1, q2, _)| pa < q1 && q2 < pb)
            .map(|&(_, _, _, _, lvl)| lvl + 1)
            .max()
            .unwrap_or(1);
        let mut level = base;
        loop {
            let collision = placed
                .iter()
                .any(|&(d1, d2, _, _, lvl)| lvl == level && c1.max(d1) < c2.min(d2));
            if !collision {
                break;
            }
            level += 1;
        }
        placed.push((c1, c2, pa, pb, level));
    }

    let height = placed.iter().map(|&(_, _, _, _, l)| l).max().unwrap_or(0);
    let width = label_row.len();
    let mut grid = vec![vec![' '; width]; height + 1];
    for &(c1, c2, _, _, level) in &placed {
        for cell in grid[level].iter_mut().take(c2).skip(c1 + 1) {
            if *cell == ' ' {
                *cell = '_';
            }
        }
        for row in grid.iter_mut().take(level + 1).skip(1) {
            row[c1] = '|';
            row[c2] = '|';
        }
    }

    let mut out = String::new();
    for row in (1..=height).rev() {
        let line: String = grid[row].iter().collect();
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&label_row);
    out.push('\n');
    out
}
