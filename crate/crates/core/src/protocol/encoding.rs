//! Canonical octet encoding helpers: every variable-length field carries a
//! u32 big-endian length prefix; integers and float bit patterns are
//! big-endian.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("input ended before the field did")]
    Truncated,
    #[error("trailing bytes after the last field")]
    TrailingBytes,
    #[error("field content malformed")]
    BadField,
}

#[derive(Default)]
pub struct Encoder {
    buf: Vec<u8>,
}

impl Encoder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Length-prefixed octet field.
    pub fn bytes(&mut self, data: &[u8]) {
        self.buf.extend_from_slice(&(data.len() as u32).to_be_bytes());
        self.buf.extend_from_slice(data);
    }

    pub fn f64(&mut self, v: f64) {
        self.bytes(&v.to_bits().to_be_bytes());
    }

    pub fn u32(&mut self, v: u32) {
        self.buf.extend_from_slice(&v.to_be_bytes());
    }

    /// Already-encoded nested structure, appended verbatim.
    pub fn raw(&mut self, data: &[u8]) {
        self.buf.extend_from_slice(data);
    }

    pub fn finish(self) -> Vec<u8> {
        self.buf
    }
}

pub struct Decoder<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Decoder<'a> {
    pub fn new(data: &'a [u8]) -> Self {
        Decoder { data, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8], DecodeError> {
        if self.data.len() - self.pos < n {
            return Err(DecodeError::Truncated);
        }
        let out = &self.data[self.pos..self.pos + n];
        self.pos += n;
        Ok(out)
    }

    pub fn bytes(&mut self) -> Result<Vec<u8>, DecodeError> {
        let len = u32::from_be_bytes(self.take(4)?.try_into().unwrap()) as usize;
        Ok(self.take(len)?.to_vec())
    }

    pub fn f64(&mut self) -> Result<f64, DecodeError> {
        let field = self.bytes()?;
        let bits: [u8; 8] = field.try_into().map_err(|_| DecodeError::BadField)?;
        Ok(f64::from_bits(u64::from_be_bytes(bits)))
    }

    pub fn finish(&self) -> Result<(), DecodeError> {
        if self.pos != self.data.len() {
            return Err(DecodeError::TrailingBytes);
        }
        Ok(())
    }
}
