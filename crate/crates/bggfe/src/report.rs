//! Rectangular text output in three flavours.

use std::fmt::Write;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    /// Space-aligned columns.
    #[default]
    Text,
    Tsv,
    Markdown,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "tsv" => Ok(Format::Tsv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(format!("unknown format `{s}` (expected text, tsv or markdown)")),
        }
    }
}

/// A titled table of strings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sheet {
    pub title: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Sheet {
    pub fn new(title: impl Into<String>, header: &[&str]) -> Self {
        Sheet { title: title.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push<I, S>(&mut self, row: I)
    where
        I: IntoIterator<Item = S>,
        S: ToString,
    {
        self.rows.push(row.into_iter().map(|s| s.to_string()).collect());
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Tsv => {
                if !self.title.is_empty() {
                    writeln!(out, "# {}", self.title).unwrap();
                }
                for row in std::iter::once(&self.header).chain(&self.rows) {
                    writeln!(out, "{}", row.join("\t")).unwrap();
                }
            }
            Format::Markdown => {
                if !self.title.is_empty() {
                    writeln!(out, "### {}\n", self.title).unwrap();
                }
                let esc = |s: &String| s.replace('|', "\\|");
                writeln!(out, "| {} |", self.header.iter().map(esc).collect::<Vec<_>>().join(" | ")).unwrap();
                writeln!(out, "|{}", "---|".repeat(self.header.len())).unwrap();
                for row in &self.rows {
                    writeln!(out, "| {} |", row.iter().map(esc).collect::<Vec<_>>().join(" | ")).unwrap();
                }
            }
            Format::Text => {
                if !self.title.is_empty() {
                    writeln!(out, "{}", self.title).unwrap();
                }
                let cols = self.header.len().max(self.rows.iter().map(Vec::len).max().unwrap_or(0));
                let mut width = vec![0; cols];
                for row in std::iter::once(&self.header).chain(&self.rows) {
                    for (i, cell) in row.iter().enumerate() {
                        width[i] = width[i].max(cell.chars().count());
                    }
                }
                for row in std::iter::once(&self.header).chain(&self.rows) {
                    let line: Vec<String> = row
                        .iter()
                        .enumerate()
                        .map(|(i, c)| format!("{c}{}", " ".repeat(width[i] - c.chars().count())))
                        .collect();
                    writeln!(out, "{}", line.join("  ").trim_end()).unwrap();
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Sheet {
        let mut s = Sheet::new("t", &["a", "bb"]);
        s.push(["xyz", "1"]);
        s
    }

    #[test]
    fn formats() {
        assert_eq!(sample().render(Format::Tsv), "# t\na\tbb\nxyz\t1\n");
        assert_eq!(sample().render(Format::Text), "t\na    bb\nxyz  1\n");
        assert_eq!(sample().render(Format::Markdown), "### t\n\n| a | bb |\n|---|---|\n| xyz | 1 |\n");
        assert_eq!("md".parse::<Format>(), Ok(Format::Markdown));
        assert!("csv".parse::<Format>().is_err());
    }
}
