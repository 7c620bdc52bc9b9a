//! The bundled corpus, embedded at build time from `corpus/`.

use std::path::Path;

use crate::format::{ComplexFile, Input};

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".json")))),*]
    };
}

/// Every bundled file as `(name, text)`.
pub const FILES: &[(&str, &str)] = bundled!["point", "interval", "square", "cube", "circle", "octahedron", "torus", "mobius", "corrupt_interval", "corrupt_square"];

/// The well-formed complexes, without the corruption fixtures.
pub const MEMBERS: &[&str] = &["point", "interval", "square", "cube", "circle", "octahedron", "torus", "mobius"];

/// The closed orientable members.
pub const CLOSED: &[&str] = &["point", "circle", "octahedron", "torus"];

pub fn text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// A bundled file as if read from `corpus/<name>.json`.
pub fn input(name: &str) -> Input {
    let t = text(name).unwrap_or_else(|| panic!("no corpus member {name:?}"));
    Input::from_text(Path::new(&format!("corpus/{name}.json")), t).expect("bundled files parse")
}

pub fn file(name: &str) -> ComplexFile {
    input(name).file
}

#[cfg(test)]
mod tests {
    use super::*;
    use lhk_core::complex::{corpus, BallComplex};

    #[test]
    fn bundled_files_match_the_builders() {
        let want: [(&str, BallComplex); 8] = [
            ("point", corpus::point()),
            ("interval", corpus::interval()),
            ("square", corpus::square_cell()),
            ("cube", corpus::cube(3)),
            ("circle", corpus::circle3()),
            ("octahedron", corpus::octahedron()),
            ("torus", corpus::torus()),
            ("mobius", corpus::mobius()),
        ];
        for (name, x) in want {
            assert_eq!(file(name).complex().unwrap(), x, "{name}");
        }
    }

    #[test]
    fn promises() {
        for name in MEMBERS {
            let closed = CLOSED.contains(name);
            let p = file(name).promise.unwrap();
            assert_eq!(p == crate::format::PromiseName::ClosedOrientable, closed, "{name}");
        }
    }

    #[test]
    fn fixtures_carry_a_corruption() {
        for (name, _) in FILES {
            assert_eq!(file(name).corruption.is_some(), name.starts_with("corrupt"), "{name}");
        }
    }
}
