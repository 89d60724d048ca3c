//! Trace serialization: CSV with lossless shortest-round-trip floats, and
//! JSON with a `meta` object plus parallel arrays.

use std::io::Write;

use serde::Serialize;

/// Column-labelled series ready to write.
pub struct TraceData {
    pub times: Vec<f64>,
    /// `(header label, series)` pairs, all the same length as `times`.
    pub series: Vec<(String, Vec<f64>)>,
}

impl TraceData {
    pub fn full(trace: &cascade4::trace::ProbabilityTrace) -> Self {
        Self {
            times: trace.times.clone(),
            series: (0..4)
                .map(|i| (format!("p{}", i + 1), trace.p[i].clone()))
                .collect(),
        }
    }

    pub fn single_level(trace: &cascade4::trace::ProbabilityTrace, level: usize) -> Self {
        Self {
            times: trace.times.clone(),
            series: vec![(format!("p{level}"), trace.p[level - 1].clone())],
        }
    }
}

/// Write `t,<labels...>` rows. Every float is printed with the shortest
/// representation that parses back to the identical bits, so re-reading a
/// file reproduces the in-memory trace exactly.
pub fn write_csv(data: &TraceData, out: &mut impl Write) -> std::io::Result<()> {
    let mut header = String::from("t");
    for (label, _) in &data.series {
        header.push(',');
        header.push_str(label);
    }
    header.push('\n');
    out.write_all(header.as_bytes())?;
    let mut line = String::new();
    for (k, t) in data.times.iter().enumerate() {
        line.clear();
        push_float(&mut line, *t);
        for (_, series) in &data.series {
            line.push(',');
            push_float(&mut line, series[k]);
        }
        line.push('\n');
        out.write_all(line.as_bytes())?;
    }
    Ok(())
}

fn push_float(buf: &mut String, v: f64) {
    use std::fmt::Write as _;
    write!(buf, "{v}").expect("formatting into a String cannot fail");
}

#[derive(Serialize)]
struct JsonTrace<'a, M: Serialize> {
    meta: &'a M,
    t: &'a [f64],
    #[serde(flatten)]
    series: std::collections::BTreeMap<String, &'a [f64]>,
}

/// Write a JSON object `{ "meta": ..., "t": [...], "p1": [...], ... }`.
pub fn write_json<M: Serialize>(
    data: &TraceData,
    meta: &M,
    out: &mut impl Write,
) -> std::io::Result<()> {
    let series = data
        .series
        .iter()
        .map(|(label, values)| (label.clone(), values.as_slice()))
        .collect();
    let doc = JsonTrace {
        meta,
        t: &data.times,
        series,
    };
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    out.write_all(b"\n")
}

