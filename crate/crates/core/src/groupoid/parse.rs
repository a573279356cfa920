use super::{FiniteGroupoid, GroupoidBuilder, GroupoidError};
use crate::text::{content_lines, split_header, valid_name, valid_symbol, ParseError};

/// Parse the line-based groupoid format:
///
/// ```text
/// objects: a b
/// arrow f : a -> b
/// identity a = id_a
/// compose f id_a = f
/// inverse f = finv
/// ```
///
/// Only structure is checked here; see [`FiniteGroupoid::validate`].
pub fn parse_groupoid(text: &str) -> Result<FiniteGroupoid, GroupoidError> {
    let mut b = GroupoidBuilder::new();
    let mut seen_objects = false;
    for (line, content) in content_lines(text) {
        let at = |e: GroupoidError| match e {
            GroupoidError::Parse(p) => p,
            other => ParseError::new(line, other.to_string()),
        };
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if let Some(rest) = split_header(content, "objects") {
            if seen_objects {
                return Err(ParseError::new(line, "duplicate 'objects:' line").into());
            }
            seen_objects = true;
            for name in rest.split_whitespace() {
                if !valid_name(name) {
                    return Err(ParseError::new(line, format!("invalid object name '{name}'")).into());
                }
                b.object(name).map_err(at)?;
            }
            continue;
        }
        if !seen_objects {
            return Err(ParseError::new(line, "expected 'objects:' before other declarations").into());
        }
        match tokens.as_slice() {
            ["arrow", name, ":", dom, "->", cod] => {
                if !valid_symbol(name) {
                    return Err(ParseError::new(line, format!("invalid arrow name '{name}'")).into());
                }
                b.arrow(name, dom, cod).map_err(at)?;
            }
            ["identity", object, "=", arrow] => b.identity(object, arrow).map_err(at)?,
            ["compose", g, h, "=", p] => b.compose(g, h, p).map_err(at)?,
            ["inverse", a, "=", inv] => b.inverse(a, inv).map_err(at)?,
            _ => {
                return Err(ParseError::new(line, format!("unrecognized line '{content}'")).into());
            }
        }
    }
    if !seen_objects {
        return Err(ParseError::new(0, "missing 'objects:' line").into());
    }
    Ok(b.build())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const PAIR: &str = "\
# pair groupoid on two objects
objects: a b
arrow id_a : a -> a
arrow id_b : b -> b
arrow f : a -> b
arrow finv : b -> a
identity a = id_a
identity b = id_b
compose id_a id_a = id_a
compose id_b id_b = id_b
compose f id_a = f
compose id_b f = f
compose finv id_b = finv
compose id_a finv = finv
compose finv f = id_a
compose f finv = id_b
inverse id_a = id_a
inverse id_b = id_b
inverse f = finv
inverse finv = f
";

    #[test]
    fn pair_groupoid_file() {
        let g = parse_groupoid(PAIR).unwrap();
        assert_eq!(g.arrow_count(), 4);
        assert_eq!(g.object_count(), 2);
        assert!(g.validate().is_empty());
    }

    #[test]
    fn non_composable_entry_is_an_error() {
        let bad = PAIR.replace("compose f id_a = f", "compose f id_b = f");
        let err = parse_groupoid(&bad).unwrap_err();
        match err {
            GroupoidError::Parse(p) => {
                assert_eq!(p.line, 11);
                assert!(p.message.contains("not composable"), "{}", p.message);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn undeclared_names() {
        let bad = PAIR.replace("arrow f : a -> b", "arrow f : a -> c");
        assert!(parse_groupoid(&bad).unwrap_err().to_string().contains("unknown object 'c'"));
        let bad = PAIR.replace("inverse f = finv", "inverse f = g");
        assert!(parse_groupoid(&bad).unwrap_err().to_string().contains("unknown arrow 'g'"));
    }

    #[test]
    fn syntax_errors() {
        assert!(parse_groupoid("arrow f : a -> b").is_err());
        assert!(parse_groupoid("objects: a\narrow f a -> a").is_err());
        assert!(parse_groupoid("").is_err());
    }

    #[test]
    fn one_object_group() {
        let text = "objects: *\narrow e : * -> *\narrow g : * -> *\narrow h : * -> *\nidentity * = e\n\
compose e e = e\ncompose e g = g\ncompose e h = h\ncompose g e = g\ncompose g g = h\ncompose g h = e\n\
compose h e = h\ncompose h g = e\ncompose h h = g\ninverse e = e\ninverse g = h\ninverse h = g\n";
        let g = parse_groupoid(text).unwrap();
        assert_eq!(g.arrow_count(), 3);
        assert!(g.validate().is_empty());
    }
}
