//! Reading observations from flags, plain files and CSV columns.

use std::path::Path;

use neutrostat::SetValue;

use crate::CliError;

/// Splits on whitespace, and on commas or semicolons outside brackets.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '[' | '(' | '{' => depth += 1,
            ']' | ')' | '}' => depth -= 1,
            _ => {}
        }
        let split = ch.is_whitespace() || (depth == 0 && (ch == ',' || ch == ';'));
        if split {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub fn parse_all<T>(tokens: &[String]) -> Result<Vec<T>, CliError>
where
    T: std::str::FromStr<Err = neutrostat::Error>,
{
    tokens
        .iter()
        .map(|t| t.parse::<T>().map_err(CliError::Domain))
        .collect()
}

pub fn parse_set(text: &str) -> Result<SetValue, CliError> {
    text.trim().parse().map_err(CliError::Domain)
}

pub fn parse_reals(text: &str) -> Result<Vec<f64>, CliError> {
    tokenize(text)
        .iter()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::Usage(format!("expected a number, got {t:?}")))
        })
        .collect()
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(neutrostat::Error::Io(format!("{}: {e}", path.display()))))
}

/// One observation per non-empty line; `#` starts a comment.
pub fn file_tokens(path: &Path) -> Result<Vec<String>, CliError> {
    Ok(read(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

/// Raw cells of the named (or 0-based numeric) columns, header row required.
pub fn csv_columns(path: &Path, columns: &[&str]) -> Result<Vec<Vec<String>>, CliError> {
    let io = |e: csv::Error| CliError::Domain(neutrostat::Error::Io(format!("{}: {e}", path.display())));
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(io)?;
    let headers = rdr.headers().map_err(io)?.clone();
    let idx: Vec<usize> = columns
        .iter()
        .map(|c| {
            headers
                .iter()
                .position(|h| h == *c)
                .or_else(|| c.parse().ok().filter(|&i: &usize| i < headers.len()))
                .ok_or_else(|| CliError::Usage(format!("no column {c:?} in {}", path.display())))
        })
        .collect::<Result<_, _>>()?;
    let mut out = vec![Vec::new(); columns.len()];
    for rec in rdr.records() {
        let rec = rec.map_err(io)?;
        for (col, &i) in out.iter_mut().zip(&idx) {
            col.push(rec.get(i).unwrap_or("").to_string());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_aware_split() {
        assert_eq!(
            tokenize("[6,6] [2,5]  30,{21}U(22,25]"),
            vec!["[6,6]", "[2,5]", "30", "{21}U(22,25]"]
        );
        assert_eq!(tokenize("1;2, 3"), vec!["1", "2", "3"]);
        assert!(tokenize("  ").is_empty());
    }

    #[test]
    fn csv_and_files() {
        let dir = tempfile::tempdir().unwrap();
        let csv = dir.path().join("d.csv");
        std::fs::write(&csv, "x,y\n2,\"[1,3]\"\n\"[4,5]\",6\n").unwrap();
        let cols = csv_columns(&csv, &["x", "1"]).unwrap();
        assert_eq!(cols, vec![vec!["2", "[4,5]"], vec!["[1,3]", "6"]]);
        assert!(matches!(csv_columns(&csv, &["z"]), Err(CliError::Usage(_))));
        let txt = dir.path().join("d.txt");
        std::fs::write(&txt, "# header\n[6,6]\n\n30 # crisp\n").unwrap();
        assert_eq!(file_tokens(&txt).unwrap(), vec!["[6,6]", "30"]);
    }
}
