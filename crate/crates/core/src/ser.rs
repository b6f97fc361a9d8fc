//! Serialization helpers: rationals and polynomials always travel as strings.

use alloc::string::ToString;

use serde::{Serialize, Serializer};

use crate::cyclo::CycloElt;
use crate::poly::MultiPoly;

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for CycloElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Always "num/den", integers included.
pub(crate) fn num_den(x: &crate::rational::Q) -> alloc::string::String {
    alloc::format!("{}/{}", x.numer(), x.denom())
}

pub mod rat {
    use super::*;
    use crate::rational::Q;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&num_den(x))
    }
}

pub mod rat_vec {
    use super::*;
    use crate::rational::Q;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(x: &[Q], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(x.len()))?;
        for v in x {
            seq.serialize_element(&num_den(v))?;
        }
        seq.end()
    }
}

pub mod rat_opt {
    use super::*;
    use crate::rational::Q;

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_some(&num_den(v)),
            None => s.serialize_none(),
        }
    }
}
