//! Text forms: resource literals `{#c: pub, #d: pri}` and universe lists `#c,#d`.

use super::{Ownership, Resource, Universe};
use crate::error::Result;
use crate::syntax::lexer::{Cursor, Tok};
use crate::syntax::Chan;

pub fn parse_resource(text: &str) -> Result<Resource> {
    let mut cur = Cursor::new(text)?;
    cur.expect(Tok::LBrace)?;
    let mut out = Resource::empty();
    while !cur.eat(&Tok::RBrace) {
        let chan = match cur.next() {
            Some(Tok::Const(c)) => Chan::new(c),
            _ => return Err(cur.error_prev("expected a channel constant like `#c`")),
        };
        if out.contains(&chan) {
            return Err(cur.error_prev(format!("channel {chan} listed twice")));
        }
        cur.expect(Tok::Colon)?;
        let own = match cur.next() {
            Some(Tok::Lower(w)) if w == "pub" => Ownership::Pub,
            Some(Tok::Lower(w)) if w == "pri" => Ownership::Pri,
            _ => return Err(cur.error_prev("expected `pub` or `pri`")),
        };
        out.insert(chan, own);
        if !cur.eat(&Tok::Comma) {
            cur.expect(Tok::RBrace)?;
            break;
        }
    }
    cur.finish()?;
    Ok(out)
}

/// A comma-separated list of constants. The leading `#` may be omitted.
pub fn parse_universe(text: &str) -> Result<Universe> {
    let mut cur = Cursor::new(text)?;
    let mut chans = Vec::new();
    loop {
        match cur.next() {
            Some(Tok::Const(c)) | Some(Tok::Lower(c)) | Some(Tok::Upper(c)) => chans.push(Chan::new(c)),
            _ => return Err(cur.error_prev("expected a channel name")),
        }
        if !cur.eat(&Tok::Comma) {
            break;
        }
    }
    cur.finish()?;
    Ok(Universe::from_chans(chans))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resource_literals() {
        assert_eq!(parse_resource("{}").unwrap(), Resource::empty());
        assert_eq!(parse_resource(" { } ").unwrap(), Resource::empty());
        let r = parse_resource("{#c: pub, #d: pri}").unwrap();
        assert_eq!(r, Resource::from_pairs([("c", Ownership::Pub), ("d", Ownership::Pri)]));
        assert_eq!(parse_resource(&r.to_string()).unwrap(), r);
        assert_eq!(parse_resource("{#c: pub,}").unwrap(), Resource::from_pairs([("c", Ownership::Pub)]));
    }

    #[test]
    fn bad_resource_literals() {
        for bad in ["", "{", "{#c}", "{#c: own}", "{#c: pub #d: pri}", "{#c: pub, #c: pri}", "{} x", "{c: pub}"] {
            assert!(parse_resource(bad).is_err(), "{bad:?} should fail");
        }
    }

    #[test]
    fn universe_lists() {
        assert_eq!(parse_universe("#c,#d").unwrap(), Universe::new(["c", "d"]));
        assert_eq!(parse_universe("d, c1").unwrap(), Universe::new(["c1", "d"]));
        assert!(parse_universe("").is_err());
        assert!(parse_universe("#c,").is_err());
        assert!(parse_universe("#c #d").is_err());
    }
}
