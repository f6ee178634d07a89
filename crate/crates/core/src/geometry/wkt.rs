use super::{Coord, Geometry, GeometryError, LineString, Polygon};

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, message: impl Into<String>) -> GeometryError {
        GeometryError::Wkt {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), GeometryError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn keyword(&mut self) -> String {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphabetic())
            .unwrap_or(rest.len());
        self.pos += len;
        rest[..len].to_ascii_uppercase()
    }

    fn number(&mut self) -> Result<f64, GeometryError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E')))
            .unwrap_or(rest.len());
        let value = rest[..len]
            .parse::<f64>()
            .map_err(|_| self.err(format!("expected a number, found {:?}", &rest[..len.max(1).min(rest.len())])))?;
        if !value.is_finite() {
            return Err(self.err("non-finite coordinate"));
        }
        self.pos += len;
        Ok(value)
    }

    fn coord(&mut self) -> Result<Coord, GeometryError> {
        let x = self.number()?;
        let y = self.number()?;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit() || c == '-' || c == '+' || c == '.') {
            return Err(self.err("only two-dimensional coordinates are supported"));
        }
        Ok(Coord::new(x, y))
    }

    fn list<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T, GeometryError>) -> Result<Vec<T>, GeometryError> {
        self.expect('(')?;
        let mut out = vec![item(self)?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(item(self)?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn coords(&mut self) -> Result<Vec<Coord>, GeometryError> {
        self.list(Self::coord)
    }

    fn polygon(&mut self) -> Result<Polygon, GeometryError> {
        let mut rings = self.list(Self::coords)?;
        let exterior = rings.remove(0);
        Polygon::new(exterior, rings)
    }

    fn multipoint_member(&mut self) -> Result<Coord, GeometryError> {
        if self.peek() == Some('(') {
            self.pos += 1;
            let c = self.coord()?;
            self.expect(')')?;
            Ok(c)
        } else {
            self.coord()
        }
    }

    fn geometry(&mut self) -> Result<Geometry, GeometryError> {
        let kw = self.keyword();
        match self.peek() {
            Some('(') => {}
            Some(_) => {
                let modifier = self.keyword();
                return Err(self.err(match modifier.as_str() {
                    "EMPTY" => "EMPTY geometries are not supported".to_owned(),
                    "Z" | "M" | "ZM" => "only two-dimensional coordinates are supported".to_owned(),
                    _ => format!("unexpected token after {kw}"),
                }));
            }
            None => return Err(self.err("unexpected end of input")),
        }
        let g = match kw.as_str() {
            "POINT" => {
                self.expect('(')?;
                let c = self.coord()?;
                self.expect(')')?;
                Geometry::Point(c)
            }
            "LINESTRING" => Geometry::LineString(LineString::new(self.coords()?)?),
            "POLYGON" => Geometry::Polygon(self.polygon()?),
            "MULTIPOINT" => Geometry::MultiPoint(self.list(Self::multipoint_member)?),
            "MULTILINESTRING" => Geometry::MultiLineString(
                self.list(|r| LineString::new(r.coords()?))?,
            ),
            "MULTIPOLYGON" => Geometry::MultiPolygon(self.list(Self::polygon)?),
            "" => return Err(self.err("expected a geometry keyword")),
            other => return Err(self.err(format!("unsupported geometry type {other}"))),
        };
        Ok(g)
    }
}

/// Parses 2-D WKT. Keywords are case-insensitive; rings are validated.
pub fn parse_wkt(text: &str) -> Result<Geometry, GeometryError> {
    let mut reader = Reader { src: text, pos: 0 };
    let g = reader.geometry()?;
    if reader.peek().is_some() {
        return Err(reader.err("trailing input after geometry"));
    }
    Ok(g)
}

fn fmt_num(v: f64) -> String {
    let s = format!("{v:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_owned()
    } else {
        s.to_owned()
    }
}

fn fmt_coord(c: &Coord) -> String {
    format!("{} {}", fmt_num(c.x), fmt_num(c.y))
}

fn fmt_coords(cs: &[Coord]) -> String {
    let inner: Vec<String> = cs.iter().map(fmt_coord).collect();
    format!("({})", inner.join(", "))
}

fn fmt_polygon(p: &Polygon) -> String {
    let rings: Vec<String> = p.rings().map(fmt_coords).collect();
    format!("({})", rings.join(", "))
}

/// Uppercase keyword, one space, coordinates with at most 9 decimals.
pub fn to_wkt(g: &Geometry) -> String {
    match g {
        Geometry::Point(c) => format!("POINT ({})", fmt_coord(c)),
        Geometry::LineString(l) => format!("LINESTRING {}", fmt_coords(l.points())),
        Geometry::Polygon(p) => format!("POLYGON {}", fmt_polygon(p)),
        Geometry::MultiPoint(cs) => {
            let inner: Vec<String> = cs.iter().map(|c| format!("({})", fmt_coord(c))).collect();
            format!("MULTIPOINT ({})", inner.join(", "))
        }
        Geometry::MultiLineString(ls) => {
            let inner: Vec<String> = ls.iter().map(|l| fmt_coords(l.points())).collect();
            format!("MULTILINESTRING ({})", inner.join(", "))
        }
        Geometry::MultiPolygon(ps) => {
            let inner: Vec<String> = ps.iter().map(fmt_polygon).collect();
            format!("MULTIPOLYGON ({})", inner.join(", "))
        }
    }
}
