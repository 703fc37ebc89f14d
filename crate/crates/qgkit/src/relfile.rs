//! Relation files: one `name : <expr> = <expr>` per line, `#` comments.

use qgkit_core::freealg::RelationSet;
use qgkit_core::{GeneratorTable, RootOrder};

use crate::parse::{ParseError, Parser, Unknown};

/// Parses relation-file text. Generators not in `table` are appended to it
/// in order of first appearance when `unknown` is [`Unknown::Declare`].
pub fn parse_relations(
    text: &str,
    order: RootOrder,
    table: &mut GeneratorTable,
    unknown: Unknown,
    source: &str,
) -> Result<RelationSet, ParseError> {
    let mut rels = RelationSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: &str| ParseError { line, column, message: message.into() };
        let colon = body.find(':').ok_or_else(|| err(1, "expected `name : lhs = rhs`"))?;
        let name = body[..colon].trim();
        if name.is_empty() {
            return Err(err(1, "missing relation name"));
        }
        let rest = &body[colon + 1..];
        let eq = rest.find('=').ok_or_else(|| err(chars(&body[..colon]) + 2, "expected `=`"))?;
        let lhs_col = chars(&body[..colon]) + 2;
        let rhs_col = lhs_col + chars(&rest[..eq]) + 1;
        let lhs = Parser::new(&rest[..eq], line, lhs_col, order, table, unknown)?.parse_all()?;
        let rhs = Parser::new(&rest[eq + 1..], line, rhs_col, order, table, unknown)?.parse_all()?;
        rels.push(name, lhs.sub(&rhs), source).map_err(|e| err(1, &e.to_string()))?;
    }
    Ok(rels)
}

fn chars(s: &str) -> usize {
    s.chars().count()
}

/// Relation-file text for `rels`, re-readable by [`parse_relations`].
pub fn format_relations(rels: &RelationSet, table: &GeneratorTable) -> String {
    let mut out = String::new();
    for r in rels.iter() {
        out.push_str(&format!("{} : {} = 0\n", r.name, r.poly.display(table)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qgkit_core::{NcPoly, Scalar};

    #[test]
    fn oscillator_file() {
        let mut t = GeneratorTable::new(&["B", "A"]).unwrap();
        let text = "# oscillator\nosc : A*B = q^(2)*B*A + 1\n\n";
        let rels = parse_relations(text, RootOrder::DEFAULT, &mut t, Unknown::Reject, "file").unwrap();
        assert_eq!(rels.len(), 1);
        let r = rels.get("osc").unwrap();
        let q2 = Scalar::q(RootOrder::DEFAULT).pow(2).unwrap();
        let expect = NcPoly::term(&[1, 0], Scalar::one()).sub(&NcPoly::term(&[0, 1], q2)).sub(&NcPoly::one());
        assert_eq!(r.poly, expect);
        assert_eq!(r.source, "file");
    }

    #[test]
    fn errors_carry_file_positions() {
        let mut t = GeneratorTable::default();
        let text = "ok : a*b = b*a\nbad : a*b = b a\n";
        let e = parse_relations(text, RootOrder::DEFAULT, &mut t, Unknown::Declare, "f").unwrap_err();
        assert_eq!((e.line, e.column), (2, 15));
        let e = parse_relations("r : a*b\n", RootOrder::DEFAULT, &mut t, Unknown::Declare, "f").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_relations("a*b = 0\n", RootOrder::DEFAULT, &mut t, Unknown::Declare, "f").unwrap_err();
        assert!(e.message.contains("name"));
    }

    #[test]
    fn round_trip() {
        let mut t = GeneratorTable::default();
        let text = "r1 : y*x = q^(1/3)*x*y\nr2 : x*x = (q - q^(-1))/(q + 1)*y\n";
        let rels = parse_relations(text, RootOrder::DEFAULT, &mut t, Unknown::Declare, "f").unwrap();
        let printed = format_relations(&rels, &t);
        let mut t2 = t.clone();
        let again = parse_relations(&printed, RootOrder::DEFAULT, &mut t2, Unknown::Reject, "f").unwrap();
        assert_eq!(again.polys(), rels.polys());
    }
}
