//! Report assembly: an optional `# key: value` metadata block, one header
//! line, then comma-delimited rows. Rendering is deterministic — identical
//! rows always produce identical bytes.

use std::path::Path;

use super::CliError;

/// A tabular report ready for rendering.
#[derive(Debug, Clone)]
pub(crate) struct Report {
    meta: Vec<(String, String)>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Report {
    pub(crate) fn new<I, S>(header: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Report {
            meta: Vec::new(),
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub(crate) fn push_meta(&mut self, key: &str, value: impl Into<String>) {
        self.meta.push((key.to_owned(), value.into()));
    }

    pub(crate) fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width matches header");
        self.rows.push(row);
    }

    /// Renders to text; errors when there is nothing to report.
    pub(crate) fn render(&self, include_meta: bool) -> Result<String, CliError> {
        if self.rows.is_empty() {
            return Err(CliError::EmptyReport);
        }
        let mut text = String::new();
        if include_meta {
            for (key, value) in &self.meta {
                text.push_str(&format!("# {key}: {value}\n"));
            }
        }
        text.push_str(&self.header.join(","));
        text.push('\n');
        for row in &self.rows {
            text.push_str(&row.join(","));
            text.push('\n');
        }
        Ok(text)
    }
}

/// Fixed-decimal format with the `-0.00` artifact normalized away.
pub(crate) fn fixed(x: f64, decimals: usize) -> String {
    let s = format!("{x:.decimals$}");
    if s.starts_with('-') && s[1..].chars().all(|c| matches!(c, '0' | '.')) {
        s[1..].to_owned()
    } else {
        s
    }
}

/// Scientific notation for coefficients and residuals.
pub(crate) fn sci(x: f64, decimals: usize) -> String {
    format!("{x:.decimals$e}")
}

/// Writes `text` to the destination, or stdout when none is given.
pub(crate) fn write_output(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.display().to_string(),
            source,
        }),
        None => {
            use std::io::Write;
            match std::io::stdout().write_all(text.as_bytes()) {
                // A consumer hanging up early (`... | head`) is not a failure.
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Write {
                    path: "<stdout>".to_owned(),
                    source: e,
                }),
                _ => Ok(()),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_meta_header_rows_in_order() {
        let mut report = Report::new(["x", "y_mm"]);
        report.push_meta("mode", "demo");
        report.push_row(vec!["1".into(), "2.00".into()]);
        report.push_row(vec!["3".into(), "4.50".into()]);
        assert_eq!(
            report.render(true).unwrap(),
            "# mode: demo\nx,y_mm\n1,2.00\n3,4.50\n"
        );
        assert_eq!(report.render(false).unwrap(), "x,y_mm\n1,2.00\n3,4.50\n");
    }

    #[test]
    fn empty_report_is_an_error() {
        let report = Report::new(["x"]);
        assert!(matches!(report.render(true), Err(CliError::EmptyReport)));
    }

    #[test]
    fn fixed_formatting_never_prints_negative_zero() {
        assert_eq!(fixed(-0.0001, 2), "0.00");
        assert_eq!(fixed(-0.0001, 3), "0.000");
        assert_eq!(fixed(-0.006, 2), "-0.01");
        assert_eq!(fixed(1.005, 1), "1.0");
        assert_eq!(fixed(-12.3456, 2), "-12.35");
    }

    #[test]
    fn scientific_formatting_is_stable() {
        assert_eq!(sci(0.0727207, 6), "7.272070e-2");
        assert_eq!(sci(0.0, 3), "0.000e0");
        assert_eq!(sci(-7.73102e-5, 6), "-7.731020e-5");
    }
}
