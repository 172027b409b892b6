//! Parsing for the parenthesised tuple literals used by rhythms and vectors,
//! e.g. `(2,3,7)` or `()`.

use crate::error::{Error, Result};

pub(crate) fn parse_tuple(text: &str) -> Result<Vec<i64>> {
    let body = text
        .trim()
        .strip_prefix('(')
        .and_then(|rest| rest.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected a parenthesised tuple, got {text:?}")))?;
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<i64>()
                .map_err(|_| Error::Parse(format!("not an integer: {item:?}")))
        })
        .collect()
}

pub(crate) fn format_tuple<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    let body: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    format!("({})", body.join(","))
}
