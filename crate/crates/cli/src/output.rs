//! Number formatting and canonical JSON emission.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::Value;

pub const DECIMALS: usize = 9;

/// Fixed-point with at most nine fractional digits, trailing zeros trimmed.
pub fn fmt_num(x: f64) -> String {
    let mut s = format!("{:.*}", DECIMALS, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

pub fn fmt_vec<'a, I: IntoIterator<Item = &'a f64>>(xs: I) -> String {
    let parts: Vec<String> = xs.into_iter().map(|&x| fmt_num(x)).collect();
    format!("[{}]", parts.join(", "))
}

/// Pretty printer whose floats go through [`fmt_num`].
struct CanonicalFormatter<'a>(PrettyFormatter<'a>);

impl Formatter for CanonicalFormatter<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_num(value).as_bytes())
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_array(writer)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object(writer)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + io::Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.0.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.0.end_object_value(writer)
    }
}

/// Emits `value` with sorted keys and fixed decimal formatting. Feeding the
/// output back through `serde_json::from_str` and this function reproduces it
/// byte for byte.
pub fn canonical_json(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(
        &mut buf,
        CanonicalFormatter(PrettyFormatter::new()),
    );
    value
        .serialize(&mut ser)
        .expect("serializing a JSON value into memory cannot fail");
    let mut out = String::from_utf8(buf).expect("serde_json emits UTF-8");
    out.push('\n');
    out
}
