//! Reading input files, resolving built-in names, and CLI errors.

use std::fs;
use std::path::{Path, PathBuf};

use labelab_core::boolfn::BooleanFunctionTable;
use labelab_core::decoders::{equality_dfa, lex_less_dfa, Decoder, LabelingScheme};
use labelab_core::formats::{self, FormatError, SchemeFile};
use labelab_core::graph::Graph;
use labelab_core::schemes::{cliquewidth_scheme, equality_scheme, interval_scheme, order_scheme};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Errors that end a command with the usage exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}:{}:{}: {}", .source.line, .source.col, .source.msg)]
    Parse { path: String, source: FormatError },
    #[error("{0}")]
    Core(String),
}

impl CliError {
    pub fn core(e: impl std::fmt::Display) -> Self {
        CliError::Core(e.to_string())
    }
}

/// A file read for a command, with its digest for the run report.
pub struct Input {
    pub path: String,
    pub text: String,
    pub digest: String,
}

pub fn read_input(path: &Path) -> Result<Input, CliError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: display.clone(),
        source,
    })?;
    let digest = format!("{:x}", Sha256::digest(text.as_bytes()));
    Ok(Input {
        path: display,
        text,
        digest,
    })
}

pub fn parse<T>(
    input: &Input,
    f: impl FnOnce(&str) -> Result<T, FormatError>,
) -> Result<T, CliError> {
    f(&input.text).map_err(|source| CliError::Parse {
        path: input.path.clone(),
        source,
    })
}

pub fn write_output(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Inputs read so far, for the report.
#[derive(Default)]
pub struct Loader {
    pub seen: Vec<(String, String)>,
}

impl Loader {
    pub fn read(&mut self, path: &Path) -> Result<Input, CliError> {
        let input = read_input(path)?;
        self.seen.push((input.path.clone(), input.digest.clone()));
        Ok(input)
    }

    pub fn graph(&mut self, path: &Path) -> Result<Graph, CliError> {
        let input = self.read(path)?;
        parse(&input, formats::parse_graph)
    }

    /// A scheme file, or a built-in name: `interval`, `lex`, `eq`, `neq`,
    /// `equality`, `order`, `cw:<k>`.
    pub fn scheme(&mut self, arg: &str) -> Result<SchemeFile, CliError> {
        if let Some(s) = builtin_scheme(arg)? {
            return Ok(s);
        }
        let input = self.read(Path::new(arg))?;
        parse(&input, formats::parse_scheme)
    }

    /// A `bf` file, or an inline `<arity>:<hex>` table.
    pub fn bf(&mut self, arg: &str) -> Result<BooleanFunctionTable, CliError> {
        if let Some((arity, hex)) = arg.split_once(':') {
            if !Path::new(arg).exists() {
                let arity: usize = arity
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad arity in '{arg}'")))?;
                return BooleanFunctionTable::from_hex(arity, hex).map_err(CliError::core);
            }
        }
        let input = self.read(Path::new(arg))?;
        parse(&input, formats::parse_bf)
    }
}

fn builtin_scheme(name: &str) -> Result<Option<SchemeFile>, CliError> {
    let bits = |d: Decoder, c: usize| SchemeFile::Bits(LabelingScheme::new(d, c));
    Ok(Some(match name {
        "interval" => SchemeFile::Bits(interval_scheme()),
        "lex" => bits(Decoder::Dfa(lex_less_dfa()), 1),
        "eq" => bits(Decoder::Dfa(equality_dfa(false)), 1),
        "neq" => bits(Decoder::Dfa(equality_dfa(true)), 1),
        "equality" => SchemeFile::Fo(equality_scheme()),
        "order" => SchemeFile::Fo(order_scheme()),
        _ => match name.strip_prefix("cw:") {
            Some(k) => {
                let k = k.parse().map_err(|_| {
                    CliError::Usage(format!("bad clique-width parameter in '{name}'"))
                })?;
                SchemeFile::Bits(cliquewidth_scheme(k))
            }
            None => return Ok(None),
        },
    }))
}

/// Resolve a path written inside `file` relative to that file's directory.
pub fn relative_to(file: &Path, written: &str) -> PathBuf {
    let p = Path::new(written);
    if p.is_absolute() {
        return p.to_path_buf();
    }
    file.parent()
        .map_or_else(|| p.to_path_buf(), |dir| dir.join(p))
}

/// Parse a comma-separated list.
pub fn list<T: std::str::FromStr>(arg: &str, what: &str) -> Result<Vec<T>, CliError> {
    if arg.trim().is_empty() {
        return Ok(Vec::new());
    }
    arg.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad {what} '{s}'")))
        })
        .collect()
}
