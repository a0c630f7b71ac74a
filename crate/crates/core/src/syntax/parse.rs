use crate::dl::*;

use super::{Cursor, ParseError};

/// Parses `.tdl` source. Stops at the first offending token.
pub fn parse_dl(text: &str) -> Result<DlModel, ParseError> {
    let mut p = Parser {
        cur: Cursor::new(text),
    };
    p.model()
}

struct Parser<'s> {
    cur: Cursor<'s>,
}

const TOP_LEVEL: &str = "`platformtype`, `containertype`, `dbtype`, `database` or `platform`";

impl<'s> Parser<'s> {
    fn model(&mut self) -> Result<DlModel, ParseError> {
        let mut model = DlModel::default();
        loop {
            self.cur.skip_trivia();
            if self.cur.at_eof() {
                return Ok(model);
            }
            let Some((word, _)) = self.cur.peek_ident() else {
                return Err(self.cur.unexpected(TOP_LEVEL));
            };
            if let Some(category) = TypeCategory::from_keyword(word) {
                let start = self.cur.mark();
                self.cur.ident();
                let (name, _) = self.cur.expect_ident("type name")?;
                model.types.push(TypeDecl {
                    category,
                    name,
                    span: self.cur.span_from(start),
                });
                continue;
            }
            match word {
                "database" => model.databases.push(self.database()?),
                "platform" => model.platforms.push(self.platform()?),
                _ => return Err(self.cur.unexpected(TOP_LEVEL)),
            }
        }
    }

    /// `name ':' type`
    fn typed_name(&mut self, what: &str) -> Result<(String, String), ParseError> {
        let (name, _) = self.cur.expect_ident(&format!("{what} name"))?;
        self.cur.expect_char(':')?;
        let (ty, _) = self.cur.expect_ident(&format!("{what} type"))?;
        Ok((name, ty))
    }

    fn database(&mut self) -> Result<DatabaseDecl, ParseError> {
        let start = self.cur.mark();
        self.cur.expect_keyword("database")?;
        let (name, db_type) = self.typed_name("database")?;
        self.cur.expect_char('{')?;
        let properties = self.properties()?;
        Ok(DatabaseDecl {
            name,
            db_type,
            properties,
            span: self.cur.span_from(start),
        })
    }

    /// Properties up to and including the closing brace.
    fn properties(&mut self) -> Result<Vec<Property>, ParseError> {
        let mut properties = Vec::new();
        loop {
            self.cur.skip_trivia();
            if self.cur.eat('}') {
                return Ok(properties);
            }
            properties.push(self.property()?);
        }
    }

    fn property(&mut self) -> Result<Property, ParseError> {
        let start = self.cur.mark();
        let Some((key, _)) = self.cur.ident() else {
            return Err(self.cur.unexpected("property key or `}`"));
        };
        let (value, _) = self.cur.property_value()?;
        Ok(Property {
            key: key.to_string(),
            value,
            span: self.cur.span_from(start),
        })
    }

    fn platform(&mut self) -> Result<PlatformDecl, ParseError> {
        let start = self.cur.mark();
        self.cur.expect_keyword("platform")?;
        let (name, platform_type) = self.typed_name("platform")?;
        self.cur.expect_char('{')?;
        let mut clusters = Vec::new();
        while !self.close_block() {
            clusters.push(self.cluster()?);
        }
        Ok(PlatformDecl {
            name,
            platform_type,
            clusters,
            span: self.cur.span_from(start),
        })
    }

    fn close_block(&mut self) -> bool {
        self.cur.skip_trivia();
        self.cur.eat('}')
    }

    fn cluster(&mut self) -> Result<Cluster, ParseError> {
        let start = self.cur.mark();
        self.keyword_or_close("cluster")?;
        let (name, _) = self.cur.expect_ident("cluster name")?;
        self.cur.expect_char('{')?;
        let mut applications = Vec::new();
        while !self.close_block() {
            applications.push(self.application()?);
        }
        Ok(Cluster {
            name,
            applications,
            span: self.cur.span_from(start),
        })
    }

    fn application(&mut self) -> Result<Application, ParseError> {
        let start = self.cur.mark();
        self.keyword_or_close("application")?;
        let (name, _) = self.cur.expect_ident("application name")?;
        self.cur.expect_char('{')?;
        let mut containers = Vec::new();
        while !self.close_block() {
            containers.push(self.container()?);
        }
        Ok(Application {
            name,
            containers,
            span: self.cur.span_from(start),
        })
    }

    fn keyword_or_close(&mut self, keyword: &str) -> Result<(), ParseError> {
        match self.cur.peek_ident() {
            Some((word, _)) if word == keyword => {
                self.cur.ident();
                Ok(())
            }
            _ => Err(self.cur.unexpected(&format!("`{keyword}` or `}}`"))),
        }
    }

    fn container(&mut self) -> Result<Container, ParseError> {
        let start = self.cur.mark();
        self.keyword_or_close("container")?;
        let (name, container_type) = self.typed_name("container")?;
        self.cur.expect_char('{')?;
        self.cur.skip_trivia();
        let deploys = self.deploys()?;
        let properties = self.properties()?;
        Ok(Container {
            name,
            container_type,
            deploys,
            properties,
            span: self.cur.span_from(start),
        })
    }

    /// `deploys IDENT`, unless `deploys` turns out to be a property key.
    fn deploys(&mut self) -> Result<Option<String>, ParseError> {
        if !matches!(self.cur.peek_ident(), Some(("deploys", _))) {
            return Ok(None);
        }
        let saved = self.cur;
        self.cur.ident();
        self.cur.skip_trivia();
        if self.cur.peek() == Some('=') {
            self.cur = saved;
            return Ok(None);
        }
        let (target, _) = self.cur.expect_ident("database name")?;
        Ok(Some(target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_type_decl() {
        let m = parse_dl("platformtype AWS").unwrap();
        assert_eq!(
            m.types,
            vec![TypeDecl::new(TypeCategory::PlatformType, "AWS")]
        );
        assert!(m.databases.is_empty() && m.platforms.is_empty());
        assert_eq!(m.types[0].span.line, 1);
    }

    #[test]
    fn empty_input() {
        assert_eq!(parse_dl("").unwrap(), DlModel::default());
        assert_eq!(
            parse_dl("  // only a comment\n\n").unwrap(),
            DlModel::default()
        );
    }

    #[test]
    fn unterminated_block() {
        let err = parse_dl("database x : Nope {").unwrap_err();
        assert_eq!(err.found, None);
        assert_eq!(err.span.start, 19);
        assert!(err.to_string().contains("end of input"), "{err}");
    }

    #[test]
    fn reports_first_offending_token() {
        let err = parse_dl("dbtype MariaDB\nplatfrom p : AWS {}").unwrap_err();
        assert_eq!(err.found.as_deref(), Some("platfrom"));
        assert_eq!((err.span.line, err.span.column), (2, 1));
        let err = parse_dl("database d MariaDB {}").unwrap_err();
        assert_eq!(err.expected, "`:`");
    }

    #[test]
    fn unquoted_values_keep_colons_slashes_and_equals() {
        let src =
            "database d : T {\n    image=gitlab.x.de:5555/a/b:1.0\n    URL = http://h//x?a=b\n}\n";
        let m = parse_dl(src).unwrap();
        let props = &m.databases[0].properties;
        assert_eq!(
            props[0].value,
            PropertyValue::Scalar("gitlab.x.de:5555/a/b:1.0".into())
        );
        assert_eq!(
            props[1].value,
            PropertyValue::Scalar("http://h//x?a=b".into())
        );
    }

    #[test]
    fn deploys_and_property_named_deploys() {
        let m = parse_dl(
            "platform p : P { cluster c { application a {\n\
             container x : D { deploys db\n volumes = v\n }\n\
             container y : D {\n deploys = weird\n }\n } } }",
        )
        .unwrap();
        let a = &m.platforms[0].clusters[0].applications[0];
        assert_eq!(a.containers[0].deploys.as_deref(), Some("db"));
        assert_eq!(a.containers[0].properties.len(), 1);
        assert_eq!(a.containers[1].deploys, None);
        assert_eq!(a.containers[1].properties[0].key, "deploys");
    }

    #[test]
    fn deploys_after_properties_is_rejected() {
        let err = parse_dl(
            "platform p : P { cluster c { application a { container x : D {\n a = 1\n deploys db\n } } } }",
        )
        .unwrap_err();
        assert_eq!(err.expected, "`=`");
        assert_eq!(err.found.as_deref(), Some("db"));
    }

    #[test]
    fn crlf_input() {
        let m = parse_dl("database d : T {\r\n    A = 1\r\n    b = x, y\r\n}\r\n").unwrap();
        let props = &m.databases[0].properties;
        assert_eq!(props[0].value, PropertyValue::Scalar("1".into()));
        assert_eq!(
            props[1].value,
            PropertyValue::List(vec!["x".into(), "y".into()])
        );
    }
}
