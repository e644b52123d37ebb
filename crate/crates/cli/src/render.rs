//! Report rendering: field-per-line text for single reports, and row-shaped
//! text / csv / json-lines / latex for tables of reports.

use arrow_core::InvariantReport;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Latex,
}

/// Which polynomial fills the single polynomial column of row output.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyChoice {
    Raw,
    Normalized,
}

#[derive(Clone, Copy)]
pub struct Style {
    pub format: Format,
    pub poly: PolyChoice,
    pub bounds_only: bool,
}

/// Serialization order fixes the json key order to the report field order.
#[derive(Serialize)]
struct JsonReport<'a> {
    name: &'a str,
    gauss_code: &'a str,
    writhe: i64,
    arrow_polynomial: &'a str,
    normalized_polynomial: &'a str,
    bracket: &'a str,
    max_k_degree: u64,
    v_lower: u64,
    genus_lower: u64,
}

impl<'a> From<&'a InvariantReport> for JsonReport<'a> {
    fn from(r: &'a InvariantReport) -> Self {
        JsonReport {
            name: &r.name,
            gauss_code: &r.gauss_code,
            writhe: r.writhe,
            arrow_polynomial: &r.arrow_polynomial,
            normalized_polynomial: &r.normalized_polynomial,
            bracket: &r.bracket,
            max_k_degree: r.max_k_degree,
            v_lower: r.v_lower,
            genus_lower: r.genus_lower,
        }
    }
}

impl Style {
    fn row_poly<'a>(&self, r: &'a InvariantReport) -> &'a str {
        match self.poly {
            PolyChoice::Raw => &r.arrow_polynomial,
            PolyChoice::Normalized => &r.normalized_polynomial,
        }
    }

    pub fn header(&self) -> String {
        match self.format {
            Format::Text | Format::Json => String::new(),
            Format::Csv => {
                if self.bounds_only {
                    "name,v_lower,genus_lower\n".to_string()
                } else {
                    "name,gauss_code,writhe,arrow_polynomial,normalized_polynomial,bracket,\
                     max_k_degree,v_lower,genus_lower\n"
                        .to_string()
                }
            }
            Format::Latex => {
                let (shape, cols) = if self.bounds_only {
                    ("l|l|l", "Knot & v(K) & g(K)")
                } else {
                    ("l|l|l|l", "Knot & Arrow Polynomial & v(K) & g(K)")
                };
                format!("\\begin{{tabular}}{{{shape}}}\n{cols} \\\\ \\hline\n")
            }
        }
    }

    pub fn footer(&self) -> String {
        match self.format {
            Format::Latex => "\\end{tabular}\n".to_string(),
            _ => String::new(),
        }
    }

    pub fn row(&self, r: &InvariantReport) -> String {
        match self.format {
            Format::Text => {
                if self.bounds_only {
                    format!("{}\t{}\t{}\n", r.name, r.v_lower, r.genus_lower)
                } else {
                    format!("{}\t{}\t{}\t{}\n", r.name, self.row_poly(r), r.v_lower, r.genus_lower)
                }
            }
            Format::Csv => {
                let fields: Vec<String> = if self.bounds_only {
                    vec![r.name.clone(), r.v_lower.to_string(), r.genus_lower.to_string()]
                } else {
                    vec![
                        r.name.clone(),
                        r.gauss_code.clone(),
                        r.writhe.to_string(),
                        r.arrow_polynomial.clone(),
                        r.normalized_polynomial.clone(),
                        r.bracket.clone(),
                        r.max_k_degree.to_string(),
                        r.v_lower.to_string(),
                        r.genus_lower.to_string(),
                    ]
                };
                let mut line =
                    fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
                line.push('\n');
                line
            }
            // json rows always carry the complete record; the schema is fixed
            Format::Json => {
                let mut line = serde_json::to_string(&JsonReport::from(r))
                    .expect("report serializes to json");
                line.push('\n');
                line
            }
            Format::Latex => {
                if self.bounds_only {
                    format!("{} & {} & {} \\\\ \\hline\n", r.name, r.v_lower, r.genus_lower)
                } else {
                    format!(
                        "{} & ${}$ & {} & {} \\\\ \\hline\n",
                        r.name,
                        latex_math(self.row_poly(r)),
                        r.v_lower,
                        r.genus_lower
                    )
                }
            }
        }
    }
}

/// The field-per-line rendering used by `compute --format text`.
pub fn full_text(r: &InvariantReport, bounds_only: bool) -> String {
    if bounds_only {
        format!(
            "name: {}\nmax_k_degree: {}\nv_lower: {}\ngenus_lower: {}\n",
            r.name, r.max_k_degree, r.v_lower, r.genus_lower
        )
    } else {
        format!(
            "name: {}\ngauss_code: {}\nwrithe: {}\narrow_polynomial: {}\n\
             normalized_polynomial: {}\nbracket: {}\nmax_k_degree: {}\nv_lower: {}\n\
             genus_lower: {}\n",
            r.name,
            r.gauss_code,
            r.writhe,
            r.arrow_polynomial,
            r.normalized_polynomial,
            r.bracket,
            r.max_k_degree,
            r.v_lower,
            r.genus_lower
        )
    }
}

fn csv_field(f: &str) -> String {
    if f.contains([',', '"', '\n']) {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

/// Canonical polynomial text to latex math: exponents braced, K-indices
/// subscripted, `*` dropped.
pub fn latex_math(poly: &str) -> String {
    poly.split(' ')
        .map(|piece| match piece {
            "+" | "-" => piece.to_string(),
            term => latex_term(term),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn latex_term(term: &str) -> String {
    let (sign, body) = match term.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", term),
    };
    let factors: String = body.split('*').map(latex_factor).collect();
    format!("{sign}{factors}")
}

fn latex_factor(f: &str) -> String {
    if let Some(exp) = f.strip_prefix("A^") {
        return format!("A^{{{exp}}}");
    }
    if let Some(rest) = f.strip_prefix('K') {
        return match rest.split_once('^') {
            Some((idx, pow)) => format!("K_{{{idx}}}^{{{pow}}}"),
            None => format!("K_{{{rest}}}"),
        };
    }
    f.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn latex_math_braces_exponents_and_subscripts() {
        assert_eq!(
            latex_math("1 - A^4 - A^2*K1 + A^-2*K1 + A^-4"),
            "1 - A^{4} - A^{2}K_{1} + A^{-2}K_{1} + A^{-4}"
        );
        assert_eq!(
            latex_math("-A^-5 + A^-5*K1^2 - A^3*K1^2"),
            "-A^{-5} + A^{-5}K_{1}^{2} - A^{3}K_{1}^{2}"
        );
        assert_eq!(latex_math("2*K1*K2 - 3"), "2K_{1}K_{2} - 3");
        assert_eq!(latex_math("0"), "0");
    }

    #[test]
    fn csv_fields_quote_only_when_needed() {
        assert_eq!(csv_field("A^-4 + K1"), "A^-4 + K1");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
