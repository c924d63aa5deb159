//! Fixed numeric formatting shared by every CSV and JSON artifact.
//!
//! Numbers are written with 17 significant digits in lowercase scientific
//! notation so that identical inputs always give identical bytes.

use std::io;

use serde::Serialize;

/// Formats `x` with 17 significant digits, e.g. `2.5000000000000000e-1`.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

struct FixedFloat;

impl serde_json::ser::Formatter for FixedFloat {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            writer.write_all(num(value).as_bytes())
        } else {
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Compact JSON with every float printed through [`num`].
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloat);
    value
        .serialize(&mut ser)
        .expect("in-memory JSON serialization cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json writes UTF-8")
}
