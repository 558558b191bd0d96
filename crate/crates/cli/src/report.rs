//! Report records and their json, csv and table renderings.

use std::io::Write;

use quadmap::boundary::BoundarySet;
use quadmap::{EmbeddingDistribution, EmbeddingSurface, Mode, Perm, SignedGraph};
use serde::Serialize;

use crate::error::CliError;
use crate::Format;

pub const SCHEMA: u32 = 1;

fn json<T: Serialize>(value: &T, out: &mut dyn Write) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_rows<T: Serialize>(rows: &[T], out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Debug, Serialize)]
pub struct FaceRecord {
    pub walk: String,
    pub edges: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct FacesReport {
    pub schema: u32,
    pub vertices: usize,
    pub edges: usize,
    pub face_count: usize,
    pub euler_genus: usize,
    pub orientable: bool,
    pub faces: Vec<FaceRecord>,
}

#[derive(Serialize)]
struct FaceRow<'a> {
    face: usize,
    face_count: usize,
    euler_genus: usize,
    orientable: bool,
    edges: String,
    walk: &'a str,
}

impl FacesReport {
    pub fn new(g: &SignedGraph, s: &EmbeddingSurface) -> Self {
        let labels = g.edge_labels();
        let faces = s
            .faces
            .iter()
            .map(|f| FaceRecord {
                walk: f.walk.iter().map(|q| q.display(&labels).to_string()).collect(),
                edges: f.edges.iter().map(|&e| labels[e].clone()).collect(),
            })
            .collect();
        FacesReport {
            schema: SCHEMA,
            vertices: g.n(),
            edges: g.m(),
            face_count: s.face_count,
            euler_genus: s.euler_genus,
            orientable: s.orientable,
            faces,
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Json => json(self, out),
            Format::Csv => {
                let rows: Vec<FaceRow> = self
                    .faces
                    .iter()
                    .enumerate()
                    .map(|(i, f)| FaceRow {
                        face: i + 1,
                        face_count: self.face_count,
                        euler_genus: self.euler_genus,
                        orientable: self.orientable,
                        edges: f.edges.join(" "),
                        walk: &f.walk,
                    })
                    .collect();
                csv_rows(&rows, out)
            }
            Format::Table => {
                writeln!(out, "vertices     {}", self.vertices)?;
                writeln!(out, "edges        {}", self.edges)?;
                writeln!(out, "faces        {}", self.face_count)?;
                writeln!(out, "euler genus  {}", self.euler_genus)?;
                writeln!(out, "orientable   {}", yes_no(self.orientable))?;
                for (i, f) in self.faces.iter().enumerate() {
                    writeln!(out, "face {}: edges {} walk {}", i + 1, f.edges.join(" "), f.walk)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GenusCount {
    pub genus: usize,
    pub count: u64,
}

#[derive(Debug, Serialize)]
pub struct DistributionReport {
    pub schema: u32,
    pub mode: &'static str,
    pub total: String,
    pub average_num: String,
    pub average_den: String,
    pub seed: Option<u64>,
    pub samples: Option<u64>,
    pub estimate: Option<f64>,
    pub standard_error: Option<f64>,
    pub histogram: Vec<GenusCount>,
}

#[derive(Serialize)]
struct DistributionRow<'a> {
    genus: usize,
    count: u64,
    total: &'a str,
    average_num: &'a str,
    average_den: &'a str,
    mode: &'a str,
    seed: Option<u64>,
}

impl DistributionReport {
    pub fn new(d: &EmbeddingDistribution) -> Self {
        let avg = d.average();
        let meta = d.sample_meta.as_ref();
        DistributionReport {
            schema: SCHEMA,
            mode: match d.mode {
                Mode::Exhaustive => "exhaustive",
                Mode::Sampled => "sampled",
            },
            total: d.total.to_string(),
            average_num: avg.numer().to_string(),
            average_den: avg.denom().to_string(),
            seed: meta.map(|m| m.seed),
            samples: meta.map(|m| m.samples),
            estimate: meta.map(|m| m.estimate),
            standard_error: meta.map(|m| m.standard_error),
            histogram: d.histogram.iter().map(|(&genus, &count)| GenusCount { genus, count }).collect(),
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Json => json(self, out),
            Format::Csv => {
                let rows: Vec<DistributionRow> = self
                    .histogram
                    .iter()
                    .map(|h| DistributionRow {
                        genus: h.genus,
                        count: h.count,
                        total: &self.total,
                        average_num: &self.average_num,
                        average_den: &self.average_den,
                        mode: self.mode,
                        seed: self.seed,
                    })
                    .collect();
                csv_rows(&rows, out)
            }
            Format::Table => {
                writeln!(out, "mode     {}", self.mode)?;
                writeln!(out, "total    {}", self.total)?;
                writeln!(out, "average  {}/{}", self.average_num, self.average_den)?;
                if let (Some(seed), Some(n), Some(est), Some(se)) =
                    (self.seed, self.samples, self.estimate, self.standard_error)
                {
                    writeln!(out, "samples  {n} (seed {seed})")?;
                    writeln!(out, "estimate {est:.6} ± {se:.6}")?;
                }
                writeln!(out, "genus  count")?;
                for h in &self.histogram {
                    writeln!(out, "{:>5}  {}", h.genus, h.count)?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BoundaryReport {
    pub schema: u32,
    pub set: Vec<String>,
    pub arcs: Vec<String>,
    pub ext: String,
    pub int: String,
    pub composite: String,
    pub count: usize,
    pub direct_count: usize,
    pub vacuous: bool,
}

#[derive(Serialize)]
struct BoundaryRow<'a> {
    ext: &'a str,
    int: &'a str,
    composite: &'a str,
    count: usize,
    direct_count: usize,
    vacuous: bool,
}

impl BoundaryReport {
    /// `composite` is `Ext ∘ Int` with `Int` applied first.
    pub fn new(g: &SignedGraph, b: &BoundarySet, ext: Perm, int: Perm, direct_count: usize) -> Self {
        let composite = ext.compose(&int);
        BoundaryReport {
            schema: SCHEMA,
            set: b.source.iter().map(|&v| g.vertices()[v].clone()).collect(),
            arcs: b.labels.clone(),
            ext: ext.to_cycle_string(&b.labels),
            int: int.to_cycle_string(&b.labels),
            composite: composite.to_cycle_string(&b.labels),
            count: composite.cycle_count(),
            direct_count,
            vacuous: false,
        }
    }

    pub fn vacuous(g: &SignedGraph, b: &BoundarySet, direct_count: usize) -> Self {
        BoundaryReport {
            schema: SCHEMA,
            set: b.source.iter().map(|&v| g.vertices()[v].clone()).collect(),
            arcs: Vec::new(),
            ext: "()".into(),
            int: "()".into(),
            composite: "()".into(),
            count: 0,
            direct_count,
            vacuous: true,
        }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Json => json(self, out),
            Format::Csv => csv_rows(
                &[BoundaryRow {
                    ext: &self.ext,
                    int: &self.int,
                    composite: &self.composite,
                    count: self.count,
                    direct_count: self.direct_count,
                    vacuous: self.vacuous,
                }],
                out,
            ),
            Format::Table => {
                writeln!(out, "U          {}", self.set.join(" "))?;
                writeln!(out, "arcs       {}", self.arcs.join(" "))?;
                writeln!(out, "Ext        {}", self.ext)?;
                writeln!(out, "Int        {}", self.int)?;
                writeln!(out, "Ext∘Int    {}", self.composite)?;
                writeln!(out, "count      {}", self.count)?;
                writeln!(out, "direct     {}", self.direct_count)?;
                Ok(())
            }
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub passed: bool,
    pub instances: u64,
    pub failures: Vec<String>,
    pub details: serde_json::Value,
}

impl SuiteOutcome {
    pub fn from_report<T: Serialize>(
        suite: &'static str,
        passed: bool,
        instances: u64,
        failures: Vec<String>,
        details: &T,
    ) -> Result<Self, CliError> {
        let mut details = serde_json::to_value(details)?;
        if let Some(obj) = details.as_object_mut() {
            obj.retain(|_, v| !v.is_array());
        }
        Ok(SuiteOutcome { suite, passed, instances, failures, details })
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub passed: bool,
    pub suites: Vec<SuiteOutcome>,
}

#[derive(Serialize)]
struct VerifyRow<'a> {
    suite: &'a str,
    passed: bool,
    instances: u64,
    failures: usize,
    first_failure: &'a str,
}

impl VerifyReport {
    pub fn new(suites: Vec<SuiteOutcome>) -> Self {
        VerifyReport { schema: SCHEMA, passed: suites.iter().all(|s| s.passed), suites }
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Json => json(self, out),
            Format::Csv => {
                let rows: Vec<VerifyRow> = self
                    .suites
                    .iter()
                    .map(|s| VerifyRow {
                        suite: s.suite,
                        passed: s.passed,
                        instances: s.instances,
                        failures: s.failures.len(),
                        first_failure: s.failures.first().map_or("", String::as_str),
                    })
                    .collect();
                csv_rows(&rows, out)
            }
            Format::Table => {
                for s in &self.suites {
                    let verdict = if s.passed { "PASS" } else { "FAIL" };
                    writeln!(
                        out,
                        "{verdict} {:<13} instances {:<8} failures {}",
                        s.suite,
                        s.instances,
                        s.failures.len()
                    )?;
                    for f in s.failures.iter().take(10) {
                        writeln!(out, "  {f}")?;
                    }
                }
                Ok(())
            }
        }
    }
}
