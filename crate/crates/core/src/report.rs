//! Row builders and the JSONL / CSV writers.
//!
//! Every row is a flat JSON object with `schema_version` first. Counts are
//! decimal strings and reals are strings with 15 significant digits, so no
//! value ever passes through a float on the way out.

use std::io::{self, Write};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::bounds::BoundReport;
use crate::combinatorics::IdentityCheck;
use crate::counters::{AuditRow, CountTable};
use crate::error::Error;
use crate::real::format_sci;
use crate::waring::{WaringComparison, WaringResult};

pub const SCHEMA_VERSION: u64 = 1;

/// Significant digits of every serialized real.
pub const REAL_DIGITS: usize = 15;

pub type Row = Map<String, Value>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Jsonl,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "jsonl" => Ok(Format::Jsonl),
            "csv" => Ok(Format::Csv),
            other => Err(Error::InvalidParameter(format!("unknown format '{other}'"))),
        }
    }
}

fn row() -> Row {
    let mut r = Map::new();
    r.insert("schema_version".into(), json!(SCHEMA_VERSION));
    r
}

pub fn real(r: &BigRational) -> Value {
    Value::String(format_sci(r, REAL_DIGITS))
}

pub fn real_f64(x: f64) -> Value {
    if x.is_finite() {
        let s = format!("{:.*e}", REAL_DIGITS - 1, x);
        // match the exact formatter's signed exponent
        Value::String(match s.split_once('e') {
            Some((mant, exp)) if !exp.starts_with('-') => format!("{mant}e+{exp}"),
            _ => s,
        })
    } else {
        Value::String(x.to_string())
    }
}

pub fn integer(n: &BigUint) -> Value {
    Value::String(n.to_str_radix(10))
}

pub fn signed(n: &BigInt) -> Value {
    Value::String(n.to_str_radix(10))
}

fn opt<T: Into<Value>>(v: Option<T>) -> Value {
    v.map_or(Value::Null, Into::into)
}

/// Identifies what a count table was computed over.
#[derive(Debug, Clone, PartialEq)]
pub struct CountSource<'a> {
    pub command: &'a str,
    pub p: u64,
    pub m: Option<u64>,
    pub set: Option<String>,
    pub algo: &'a str,
    pub agreement: Option<bool>,
}

pub fn count_row(src: &CountSource<'_>, k: Option<usize>, b: u64, count: &BigUint) -> Row {
    let mut r = row();
    r.insert("command".into(), json!(src.command));
    r.insert("p".into(), json!(src.p));
    r.insert("m".into(), opt(src.m));
    r.insert("set".into(), opt(src.set.clone()));
    r.insert("k".into(), opt(k));
    r.insert("b".into(), json!(b));
    r.insert("count".into(), integer(count));
    r.insert("algo".into(), json!(src.algo));
    r.insert("agreement".into(), opt(src.agreement));
    r
}

pub fn table_rows(src: &CountSource<'_>, table: &CountTable, bs: &[u64]) -> Vec<Row> {
    bs.iter().map(|&b| count_row(src, Some(table.k()), b, table.get(b))).collect()
}

pub fn bound_row(report: &BoundReport) -> Row {
    let mut r = row();
    r.insert("bound".into(), json!(report.kind.name()));
    r.insert("p".into(), json!(report.p));
    r.insert("m".into(), opt(report.m));
    r.insert("k".into(), opt(report.k));
    r.insert("b".into(), opt(report.b));
    r.insert("lhs".into(), real(&report.lhs.midpoint()));
    r.insert("rhs".into(), real(&report.rhs.midpoint()));
    r.insert("holds".into(), json!(report.holds()));
    r.insert("slack".into(), real(&report.slack()));
    r.insert("numeric_error".into(), real(&report.numeric_error()));
    r.insert("regime".into(), opt(report.regime.clone()));
    if let Some(a) = report.a {
        r.insert("a".into(), json!(a));
    }
    if let Some(set) = &report.domain {
        r.insert("set".into(), json!(set));
    }
    if let Some(eps) = report.epsilon {
        r.insert("epsilon".into(), real_f64(eps));
    }
    r.insert("asserted".into(), json!(report.is_asserted()));
    r
}

fn coverage_value(coverage: &[(usize, Vec<u64>)]) -> Value {
    let mut m = Map::new();
    for (k, miss) in coverage {
        m.insert(k.to_string(), json!(miss));
    }
    Value::Object(m)
}

pub fn waring_row(result: &WaringResult) -> Row {
    let mut r = row();
    r.insert("kind".into(), json!(result.kind.name()));
    r.insert("p".into(), json!(result.p));
    r.insert("m".into(), json!(result.m));
    r.insert("value".into(), result.value.map_or(json!("NONE"), |v| json!(v)));
    r.insert("coverage".into(), coverage_value(&result.coverage));
    r
}

pub fn waring_comparison_row(c: &WaringComparison) -> Row {
    let mut r = row();
    r.insert("kind".into(), json!("comparison"));
    r.insert("p".into(), json!(c.p));
    r.insert("m".into(), json!(c.m));
    r.insert("value".into(), json!(c.gamma));
    r.insert("coverage".into(), Value::Null);
    r.insert("gamma_distinct".into(), c.gamma_distinct.map_or(json!("NONE"), |v| json!(v)));
    r.insert("gamma_nonzero".into(), c.gamma_nonzero.map_or(json!("NONE"), |v| json!(v)));
    r.insert("cauchy_holds".into(), json!(c.cauchy_holds));
    r.insert("ordering_holds".into(), opt(c.ordering_holds));
    r.insert("delta".into(), real_f64(c.delta));
    r.insert("cochrane_cipra".into(), real_f64(c.cochrane_cipra));
    r
}

pub struct PhiRow {
    pub p: u64,
    pub m: Option<u64>,
    pub set: String,
    pub phi: f64,
    pub argmax: u64,
    pub numeric_error: f64,
    pub subgroup_order: Option<u64>,
    pub delta_prime: Option<f64>,
}

pub fn phi_row(x: &PhiRow) -> Row {
    let mut r = row();
    r.insert("command".into(), json!("phi"));
    r.insert("p".into(), json!(x.p));
    r.insert("m".into(), opt(x.m));
    r.insert("set".into(), json!(x.set));
    r.insert("phi".into(), real_f64(x.phi));
    r.insert("argmax".into(), json!(x.argmax));
    r.insert("numeric_error".into(), real_f64(x.numeric_error));
    r.insert("subgroup_order".into(), opt(x.subgroup_order));
    r.insert("delta_prime".into(), x.delta_prime.map_or(Value::Null, real_f64));
    r
}

/// Parameters echoed into an identity row.
#[derive(Debug, Clone, Default)]
pub struct IdentityParams {
    pub k: usize,
    pub n: Option<u64>,
    pub s: Option<u64>,
    pub q: Option<String>,
}

pub fn identity_row(which: &str, params: &IdentityParams, lhs: Value, rhs: Value, holds: bool) -> Row {
    let mut r = row();
    r.insert("command".into(), json!("identity"));
    r.insert("which".into(), json!(which));
    r.insert("k".into(), json!(params.k));
    r.insert("n".into(), opt(params.n));
    r.insert("s".into(), opt(params.s));
    r.insert("q".into(), opt(params.q.clone()));
    r.insert("lhs".into(), lhs);
    r.insert("rhs".into(), rhs);
    r.insert("holds".into(), json!(holds));
    r
}

pub fn integer_identity_row(which: &str, params: &IdentityParams, check: &IdentityCheck) -> Row {
    identity_row(which, params, signed(&check.lhs), signed(&check.rhs), check.holds())
}

pub fn audit_row(p: u64, m: u64, k: usize, a: &AuditRow) -> Row {
    let mut r = row();
    r.insert("command".into(), json!("audit"));
    r.insert("p".into(), json!(p));
    r.insert("m".into(), json!(m));
    r.insert("k".into(), json!(k));
    r.insert("b".into(), json!(a.b));
    r.insert("claimed".into(), integer(&a.claimed));
    r.insert("actual".into(), integer(&a.actual));
    r.insert("diff".into(), signed(&a.diff()));
    r
}

/// A grid cell whose preconditions failed during a sweep.
pub fn skipped_row(command: &str, p: u64, m: Option<u64>, set: Option<String>, reason: &str) -> Row {
    let mut r = row();
    r.insert("command".into(), json!(command));
    r.insert("p".into(), json!(p));
    r.insert("m".into(), opt(m));
    r.insert("set".into(), opt(set));
    r.insert("skipped".into(), json!(reason));
    r
}

pub fn write_jsonl(rows: &[Row], out: &mut dyn Write) -> io::Result<()> {
    for r in rows {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn csv_cell(v: Option<&Value>) -> String {
    match v {
        None | Some(Value::Null) => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(other) => other.to_string(),
    }
}

/// CSV with the union of keys, in first-seen order, as columns.
pub fn write_csv(rows: &[Row], out: &mut dyn Write) -> io::Result<()> {
    let mut columns: Vec<&str> = Vec::new();
    for r in rows {
        for key in r.keys() {
            if !columns.contains(&key.as_str()) {
                columns.push(key);
            }
        }
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&columns)?;
    for r in rows {
        w.write_record(columns.iter().map(|c| csv_cell(r.get(*c))))?;
    }
    w.flush()
}

pub fn write_rows(rows: &[Row], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Jsonl => write_jsonl(rows, out),
        Format::Csv => write_csv(rows, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::check_zhu_wan;
    use crate::counters::count_odlyzko_stanley;
    use crate::field::PrimeModulus;
    use crate::waring::gamma_distinct;

    #[test]
    fn count_schema_order() {
        let t = count_odlyzko_stanley(PrimeModulus::new(5).unwrap(), 2, 2).unwrap();
        let src = CountSource { command: "count", p: 5, m: Some(2), set: None, algo: "newton", agreement: None };
        let rows = table_rows(&src, &t, &[0]);
        let keys: Vec<&String> = rows[0].keys().collect();
        assert_eq!(keys, ["schema_version", "command", "p", "m", "set", "k", "b", "count", "algo", "agreement"]);
        assert_eq!(rows[0]["count"], json!("4"));
    }

    #[test]
    fn bound_schema_prefix() {
        let r = check_zhu_wan(PrimeModulus::new(7).unwrap(), 2, 3, 256).unwrap();
        let row = bound_row(&r[0]);
        let keys: Vec<&str> = row.keys().map(String::as_str).take(12).collect();
        assert_eq!(
            keys,
            ["schema_version", "bound", "p", "m", "k", "b", "lhs", "rhs", "holds", "slack", "numeric_error", "regime"]
        );
        assert_eq!(row["holds"], json!(true));
    }

    #[test]
    fn waring_none_and_coverage() {
        let r = gamma_distinct(PrimeModulus::new(5).unwrap(), 2).unwrap();
        let row = waring_row(&r);
        assert_eq!(row["value"], json!("NONE"));
        assert_eq!(row["coverage"]["2"], json!([1, 4]));
    }

    #[test]
    fn csv_unions_columns() {
        let mut a = row();
        a.insert("x".into(), json!(1));
        let mut b = row();
        b.insert("y".into(), json!("s,t"));
        let mut buf = Vec::new();
        write_csv(&[a, b], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "schema_version,x,y\n1,1,\n1,,\"s,t\"\n");
    }

    #[test]
    fn reals_keep_fifteen_digits() {
        assert_eq!(real(&BigRational::new(1.into(), 3.into())), json!("3.33333333333333e-1"));
        assert_eq!(real_f64(0.5), json!("5.00000000000000e-1"));
        assert_eq!(real_f64(4.0), json!("4.00000000000000e+0"));
    }
}
