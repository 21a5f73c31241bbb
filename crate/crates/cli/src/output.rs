use std::io::Write;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Compact JSON with sorted keys.
pub fn json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("reports serialize");
    serde_json::to_string(&v).expect("values serialize")
}

/// Writes a line to stdout; a closed pipe is not an error worth reporting.
pub fn line(s: impl AsRef<str>) {
    let _ = writeln!(std::io::stdout(), "{}", s.as_ref());
}

pub fn json_line<T: Serialize>(value: &T) {
    line(json(value));
}

pub struct Csv(csv::Writer<std::io::Stdout>);

impl Csv {
    pub fn new() -> Self {
        Csv(csv::Writer::from_writer(std::io::stdout()))
    }

    pub fn row<I, S>(&mut self, cells: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        let _ = self.0.write_record(cells);
        let _ = self.0.flush();
    }
}
