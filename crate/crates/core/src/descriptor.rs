//! Flat `tag key=value …` descriptors naming curves and families.

use crate::error::{LcError, Result};
use crate::families::{
    concat, g_2, g_2_flower, g_plus_2, g_plus_2k_point, gamma_s, great_circle, nu, path_alpha, DiskPoint,
    FamilyGrid, G_PLUS_2_FLOWER,
};
use crate::invariants::{bottom_family, locate_g_plus_2_flower};
use crate::sphere::Curve;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor {
    pub tag: String,
    pub params: BTreeMap<String, String>,
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag)?;
        for (k, v) in &self.params {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

pub const CURVE_TAGS: &[&str] =
    &["nu", "g_plus_2", "g_2", "gamma_s", "path_alpha", "great_circle", "flower", "g_plus_4", "concat_nu"];
pub const FAMILY_TAGS: &[&str] = &["g_plus_2", "g_2", "disk", "nu2_g_plus_2", "bottom"];

impl Descriptor {
    pub fn parse(s: &str) -> Result<Descriptor> {
        let mut words = s.split_whitespace();
        let tag = words.next().ok_or_else(|| LcError::Parse("empty descriptor".into()))?.to_string();
        let mut params = BTreeMap::new();
        for w in words {
            let (k, v) = w.split_once('=').ok_or_else(|| LcError::Parse(format!("`{w}` is not key=value")))?;
            if k.is_empty() || v.is_empty() {
                return Err(LcError::Parse(format!("`{w}` is not key=value")));
            }
            if params.insert(k.to_string(), v.to_string()).is_some() {
                return Err(LcError::Parse(format!("key `{k}` given twice")));
            }
        }
        Ok(Descriptor { tag, params })
    }

    fn real(&self, key: &str) -> Result<Option<f64>> {
        self.params
            .get(key)
            .map(|v| {
                v.parse::<f64>()
                    .ok()
                    .filter(|x| x.is_finite())
                    .ok_or_else(|| LcError::Parse(format!("`{key}={v}` is not a number")))
            })
            .transpose()
    }

    fn req(&self, key: &str) -> Result<f64> {
        self.real(key)?.ok_or_else(|| LcError::Parse(format!("`{}` needs `{key}=`", self.tag)))
    }

    fn only(&self, keys: &[&str]) -> Result<()> {
        match self.params.keys().find(|k| !keys.contains(&k.as_str())) {
            Some(k) => Err(LcError::Parse(format!("`{}` does not take `{k}`", self.tag))),
            None => Ok(()),
        }
    }

    /// The `grid=AxB` parameter, if any.
    pub fn grid(&self) -> Result<Option<[usize; 2]>> {
        self.params
            .get("grid")
            .map(|g| crate::config::parse_grid(g).map_err(|e| LcError::Parse(e.to_string())))
            .transpose()
    }

    pub fn is_family(&self) -> bool {
        FAMILY_TAGS.contains(&self.tag.as_str()) && (self.tag != "g_plus_2" || !self.params.contains_key("s1"))
            && (self.tag != "g_2" || !self.params.contains_key("x"))
    }

    pub fn curve(&self) -> Result<Curve> {
        let tag = self.tag.as_str();
        match tag {
            "nu" => {
                self.only(&["n", "c"])?;
                let c = match (self.real("n")?, self.real("c")?) {
                    (Some(n), None) => n,
                    (None, Some(c)) => c,
                    _ => return Err(LcError::Parse("`nu` needs exactly one of `n=` or `c=`".into())),
                };
                nu(c)
            }
            "g_plus_2" => {
                self.only(&["s1", "s2"])?;
                Ok(g_plus_2(self.req("s1")?, self.req("s2")?))
            }
            "g_2" => {
                self.only(&["x", "y"])?;
                let (x, y) = (self.req("x")?, self.req("y")?);
                if !((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y)) {
                    return Err(LcError::DomainError(format!("g_2 chart point ({x}, {y}) is outside [0,1]²")));
                }
                Ok(g_2(x, y))
            }
            "gamma_s" => {
                self.only(&["s"])?;
                Ok(gamma_s(self.req("s")?))
            }
            "path_alpha" => {
                self.only(&["u"])?;
                Ok(path_alpha(self.req("u")?))
            }
            "great_circle" => {
                self.only(&[])?;
                Ok(great_circle())
            }
            "flower" => {
                self.only(&["petals"])?;
                match self.real("petals")?.unwrap_or(3.0) {
                    p if p == 1.0 => nu(1.0),
                    p if p == 3.0 => {
                        let (s1, s2) = locate_g_plus_2_flower().unwrap_or(G_PLUS_2_FLOWER);
                        Ok(g_plus_2(s1, s2))
                    }
                    p if p == 5.0 => {
                        let (x, y) = g_2_flower();
                        g_plus_2k_point(2, FLOWER_DISK_POINT, &[x, y])
                    }
                    p => Err(LcError::Parse(format!("flowers with {p} petals are not available; use 1, 3 or 5"))),
                }
            }
            "g_plus_4" => {
                self.only(&["r", "theta", "x", "y"])?;
                let p = DiskPoint { r: self.req("r")?, theta: self.req("theta")? };
                g_plus_2k_point(2, p, &[self.req("x")?, self.req("y")?])
            }
            "concat_nu" => {
                self.only(&["a", "b"])?;
                concat(&nu(self.req("a")?)?, &nu(self.req("b")?)?)
            }
            _ => Err(LcError::Parse(format!("unknown curve `{tag}`; known: {}", CURVE_TAGS.join(", ")))),
        }
    }

    pub fn family(&self, default_grid: [usize; 2]) -> Result<FamilyGrid> {
        self.only(&["grid"])?;
        let [m1, m2] = self.grid()?.unwrap_or(default_grid);
        match self.tag.as_str() {
            "g_plus_2" => FamilyGrid::g_plus_2(m1, m2),
            "g_2" => FamilyGrid::g_2(m1, m2),
            "disk" => FamilyGrid::disk(m1, m2),
            "nu2_g_plus_2" => Ok(FamilyGrid::g_plus_2(m1, m2)?.nu2_star()),
            "bottom" => bottom_family(m1, m2),
            t => Err(LcError::Parse(format!("unknown family `{t}`; known: {}", FAMILY_TAGS.join(", ")))),
        }
    }
}

/// Disk point of the 𝐠₊,₂ flower in the polar chart.
pub const FLOWER_DISK_POINT: DiskPoint = DiskPoint { r: 0.25, theta: 1.5 * std::f64::consts::PI };

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::disk_wrap;

    #[test]
    fn parse_and_print() {
        let d = Descriptor::parse("g_plus_2  s1=0.3 s2=0.4").unwrap();
        assert_eq!(d.tag, "g_plus_2");
        assert_eq!(d.to_string(), "g_plus_2 s1=0.3 s2=0.4");
        assert!(!d.is_family());
        assert!(Descriptor::parse("g_plus_2 grid=6x8").unwrap().is_family());
    }

    #[test]
    fn malformed() {
        assert!(Descriptor::parse("").is_err());
        assert!(Descriptor::parse("nu 3").is_err());
        assert!(Descriptor::parse("nu n=1 n=2").is_err());
        assert!(Descriptor::parse("nu n=x").unwrap().curve().is_err());
        assert!(Descriptor::parse("nu n=2 s=1").unwrap().curve().is_err());
        assert!(Descriptor::parse("spiral").unwrap().curve().is_err());
    }

    #[test]
    fn curves_build() {
        for s in ["nu n=3", "nu c=2.5", "g_plus_2 s1=0.1 s2=0.2", "g_2 x=0.3 y=0.6", "gamma_s s=0.4", "great_circle"] {
            let c = Descriptor::parse(s).unwrap().curve().unwrap();
            let _ = c.eval(0.5);
        }
    }

    #[test]
    fn flower_disk_point_is_the_flower() {
        let (s1, s2) = disk_wrap(FLOWER_DISK_POINT.r, FLOWER_DISK_POINT.theta);
        assert!((s1 - G_PLUS_2_FLOWER.0).abs() < 1e-12 && (s2 - G_PLUS_2_FLOWER.1).abs() < 1e-12);
    }

    #[test]
    fn families_take_grid() {
        let f = Descriptor::parse("g_plus_2 grid=6x8").unwrap().family([4, 4]).unwrap();
        assert_eq!((f.m1, f.m2), (6, 8));
        assert!(Descriptor::parse("g_plus_2 grid=6").unwrap().family([4, 4]).is_err());
    }
}
