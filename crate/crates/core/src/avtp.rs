//! Stream-AVTPDU codec: classify raw Ethernet frames, parse the VLAN +
//! AVTP header layout, and re-serialize bit-exactly.
//!
//! Frame layout (all multi-byte fields big-endian):
//!
//! ```text
//! offset  field
//!  0..6   destination MAC
//!  6..12  source MAC
//! 12..14  TPID           (8100h for a tagged frame)
//! 14..16  VLAN TCI       (PCP:3 | DEI:1 | VID:12)
//! 16..18  EtherType      (22F0h for AVTP)
//! 18      CD:1 | subtype:7
//! 19      sv/version/flag bits
//! 20      sequence number
//! 21      tu bit
//! 22..30  stream ID
//! 30..34  AVTP timestamp
//! 34..38  gateway info
//! 38..40  stream data length
//! 40      tag/channel
//! 41      tcode/sy
//! 42..50  CIP header      (DBC at offset 45)
//! 50..    payload
//! ```
//!
//! The 58-byte analysis prefix is this 50-byte header plus the first 8
//! payload bytes.

use thiserror::Error;

/// TPID value marking a VLAN-tagged frame.
pub const TPID_VLAN: u16 = 0x8100;
/// EtherType carried by AVTP frames.
pub const ETHERTYPE_AVTP: u16 = 0x22F0;
/// Offset of the first AVTP byte (CD bit + subtype).
pub const AVTP_HEADER_OFFSET: usize = 18;
/// Combined Ethernet + VLAN + AVTP + CIP header length.
pub const HEADER_LEN: usize = 50;
/// Default analysis prefix: the full header plus 8 payload bytes.
pub const PREFIX_LEN: usize = 58;
/// Smallest parseable Ethernet frame (dst + src + EtherType).
pub const MIN_ETHERNET_LEN: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("frame too short: {len} bytes, need at least {needed}")]
    FrameTooShort { len: usize, needed: usize },
    #[error("frame is not a stream AVTPDU")]
    NotAStreamAvtpdu,
}

/// Ground-truth class of a captured frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Label {
    Benign,
    Injected,
    Unlabeled,
}

impl Label {
    pub fn as_str(&self) -> &'static str {
        match self {
            Label::Benign => "benign",
            Label::Injected => "injected",
            Label::Unlabeled => "unlabeled",
        }
    }
}

impl std::str::FromStr for Label {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "benign" => Ok(Label::Benign),
            "injected" => Ok(Label::Injected),
            "unlabeled" => Ok(Label::Unlabeled),
            other => Err(format!("unknown label {other:?}")),
        }
    }
}

/// One captured Ethernet frame plus capture metadata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRecord {
    /// Microseconds since the start of the capture.
    pub timestamp_us: u64,
    /// Frame bytes exactly as captured.
    pub bytes: Vec<u8>,
    pub label: Label,
}

impl RawRecord {
    pub fn new(timestamp_us: u64, bytes: Vec<u8>) -> Self {
        RawRecord { timestamp_us, bytes, label: Label::Unlabeled }
    }

    pub fn labeled(timestamp_us: u64, bytes: Vec<u8>, label: Label) -> Self {
        RawRecord { timestamp_us, bytes, label }
    }
}

/// Classification of a raw frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameKind {
    StreamAvtpdu,
    ControlAvtpdu,
    OtherEthernet,
}

/// Parsed view of a stream AVTPDU. Keeps every header bit so that
/// serialization reproduces the original frame exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamAvtpdu {
    pub dst_mac: [u8; 6],
    pub src_mac: [u8; 6],
    pub tpid: u16,
    pub pcp: u8,
    pub dei: bool,
    pub vlan_id: u16,
    pub ethertype: u16,
    /// 7-bit subtype; the CD bit is 0 by definition of a stream AVTPDU.
    pub subtype: u8,
    /// sv / version / mr / gv / tv bits, kept verbatim.
    pub header_flags: u8,
    pub sequence_num: u8,
    /// Reserved bits + tu bit, kept verbatim.
    pub tu: u8,
    pub stream_id: u64,
    pub avtp_timestamp: u32,
    pub gateway_info: u32,
    pub stream_data_length: u16,
    /// Tag bits + channel, the full byte at offset 40.
    pub channel: u8,
    pub tcode_sy: u8,
    /// CIP header; the data block counter lives at `cip[3]`.
    pub cip: [u8; 8],
    pub payload: Vec<u8>,
}

impl StreamAvtpdu {
    /// Data block counter from the CIP header.
    pub fn dbc(&self) -> u8 {
        self.cip[3]
    }

    pub fn set_dbc(&mut self, dbc: u8) {
        self.cip[3] = dbc;
    }

    /// Total serialized frame length.
    pub fn frame_len(&self) -> usize {
        HEADER_LEN + self.payload.len()
    }

    /// Serialize back to wire bytes. Inverse of [`parse_frame`].
    pub fn serialize(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.frame_len());
        out.extend_from_slice(&self.dst_mac);
        out.extend_from_slice(&self.src_mac);
        out.extend_from_slice(&self.tpid.to_be_bytes());
        let tci: u16 =
            ((self.pcp as u16 & 0x7) << 13) | ((self.dei as u16) << 12) | (self.vlan_id & 0x0FFF);
        out.extend_from_slice(&tci.to_be_bytes());
        out.extend_from_slice(&self.ethertype.to_be_bytes());
        out.push(self.subtype & 0x7F); // CD bit 0
        out.push(self.header_flags);
        out.push(self.sequence_num);
        out.push(self.tu);
        out.extend_from_slice(&self.stream_id.to_be_bytes());
        out.extend_from_slice(&self.avtp_timestamp.to_be_bytes());
        out.extend_from_slice(&self.gateway_info.to_be_bytes());
        out.extend_from_slice(&self.stream_data_length.to_be_bytes());
        out.push(self.channel);
        out.push(self.tcode_sy);
        out.extend_from_slice(&self.cip);
        out.extend_from_slice(&self.payload);
        out
    }
}

/// Decide what a raw frame is. Total over all frames of at least 14 bytes.
pub fn classify_frame(bytes: &[u8]) -> Result<FrameKind, CodecError> {
    if bytes.len() < MIN_ETHERNET_LEN {
        return Err(CodecError::FrameTooShort { len: bytes.len(), needed: MIN_ETHERNET_LEN });
    }
    if bytes.len() <= AVTP_HEADER_OFFSET {
        return Ok(FrameKind::OtherEthernet);
    }
    let tpid = u16::from_be_bytes([bytes[12], bytes[13]]);
    let ethertype = u16::from_be_bytes([bytes[16], bytes[17]]);
    if tpid != TPID_VLAN || ethertype != ETHERTYPE_AVTP {
        return Ok(FrameKind::OtherEthernet);
    }
    if bytes[AVTP_HEADER_OFFSET] & 0x80 == 0 {
        Ok(FrameKind::StreamAvtpdu)
    } else {
        Ok(FrameKind::ControlAvtpdu)
    }
}

/// Parse a stream AVTPDU out of raw frame bytes.
pub fn parse_frame(bytes: &[u8]) -> Result<StreamAvtpdu, CodecError> {
    match classify_frame(bytes)? {
        FrameKind::StreamAvtpdu => {}
        _ => return Err(CodecError::NotAStreamAvtpdu),
    }
    if bytes.len() < PREFIX_LEN {
        return Err(CodecError::FrameTooShort { len: bytes.len(), needed: PREFIX_LEN });
    }
    let tci = u16::from_be_bytes([bytes[14], bytes[15]]);
    Ok(StreamAvtpdu {
        dst_mac: bytes[0..6].try_into().unwrap(),
        src_mac: bytes[6..12].try_into().unwrap(),
        tpid: u16::from_be_bytes([bytes[12], bytes[13]]),
        pcp: (tci >> 13) as u8,
        dei: tci & 0x1000 != 0,
        vlan_id: tci & 0x0FFF,
        ethertype: u16::from_be_bytes([bytes[16], bytes[17]]),
        subtype: bytes[18] & 0x7F,
        header_flags: bytes[19],
        sequence_num: bytes[20],
        tu: bytes[21],
        stream_id: u64::from_be_bytes(bytes[22..30].try_into().unwrap()),
        avtp_timestamp: u32::from_be_bytes(bytes[30..34].try_into().unwrap()),
        gateway_info: u32::from_be_bytes(bytes[34..38].try_into().unwrap()),
        stream_data_length: u16::from_be_bytes(bytes[38..40].try_into().unwrap()),
        channel: bytes[40],
        tcode_sy: bytes[41],
        cip: bytes[42..50].try_into().unwrap(),
        payload: bytes[50..].to_vec(),
    })
}

/// First `j` bytes of a stream AVTPDU, the feature-generator input.
pub fn extract_prefix(bytes: &[u8], j: usize) -> Result<Vec<u8>, CodecError> {
    match classify_frame(bytes)? {
        FrameKind::StreamAvtpdu => {}
        _ => return Err(CodecError::NotAStreamAvtpdu),
    }
    if bytes.len() < j {
        return Err(CodecError::FrameTooShort { len: bytes.len(), needed: j });
    }
    Ok(bytes[..j].to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sample_frame(payload_len: usize) -> StreamAvtpdu {
        StreamAvtpdu {
            dst_mac: [0x91, 0xE0, 0xF0, 0x00, 0xFE, 0x01],
            src_mac: [0x02, 0x11, 0x22, 0x33, 0x44, 0x55],
            tpid: TPID_VLAN,
            pcp: 3,
            dei: false,
            vlan_id: 2,
            ethertype: ETHERTYPE_AVTP,
            subtype: 0x00,
            header_flags: 0x81,
            sequence_num: 0x42,
            tu: 0x00,
            stream_id: 0x0211_2233_4455_0001,
            avtp_timestamp: 0x00C0_FFEE,
            gateway_info: 0,
            stream_data_length: (payload_len + 8) as u16,
            channel: 0x40,
            tcode_sy: 0xA0,
            cip: [0x00, 0x06, 0x00, 0x30, 0x80, 0x00, 0xFF, 0xFF],
            payload: (0..payload_len).map(|i| (i * 7 + 3) as u8).collect(),
        }
    }

    #[test]
    fn classify_stream_control_other() {
        let frame = sample_frame(388).serialize();
        assert_eq!(classify_frame(&frame).unwrap(), FrameKind::StreamAvtpdu);

        // CD bit flipped -> control AVTPDU.
        let mut control = frame.clone();
        control[18] |= 0x80;
        assert_eq!(classify_frame(&control).unwrap(), FrameKind::ControlAvtpdu);

        // IPv4 EtherType in the untagged position -> other.
        let mut ipv4 = frame.clone();
        ipv4[12] = 0x08;
        ipv4[13] = 0x00;
        assert_eq!(classify_frame(&ipv4).unwrap(), FrameKind::OtherEthernet);

        let mut wrong_inner = frame;
        wrong_inner[16] = 0x08;
        wrong_inner[17] = 0x00;
        assert_eq!(classify_frame(&wrong_inner).unwrap(), FrameKind::OtherEthernet);
    }

    #[test]
    fn classify_needs_fourteen_bytes() {
        assert_eq!(
            classify_frame(&[0u8; 13]),
            Err(CodecError::FrameTooShort { len: 13, needed: 14 })
        );
        // 14..=18 bytes cannot hold an AVTP header but still classify.
        assert_eq!(classify_frame(&[0u8; 14]).unwrap(), FrameKind::OtherEthernet);
        assert_eq!(classify_frame(&[0u8; 18]).unwrap(), FrameKind::OtherEthernet);
    }

    #[test]
    fn parse_round_trips_fields_and_bytes() {
        let pdu = sample_frame(388);
        let bytes = pdu.serialize();
        assert_eq!(bytes.len(), 438);

        let parsed = parse_frame(&bytes).unwrap();
        assert_eq!(parsed, pdu);
        assert_eq!(parsed.payload.len(), 388);
        assert_eq!(parsed.serialize(), bytes);
    }

    #[test]
    fn parse_rejects_non_stream_and_short() {
        let mut control = sample_frame(388).serialize();
        control[18] |= 0x80;
        assert_eq!(parse_frame(&control), Err(CodecError::NotAStreamAvtpdu));

        let short = sample_frame(388).serialize()[..57].to_vec();
        assert_eq!(parse_frame(&short), Err(CodecError::FrameTooShort { len: 57, needed: 58 }));
    }

    #[test]
    fn prefix_is_first_j_bytes() {
        let bytes = sample_frame(388).serialize();
        let prefix = extract_prefix(&bytes, PREFIX_LEN).unwrap();
        assert_eq!(prefix.len(), 58);
        assert_eq!(&prefix[..], &bytes[..58]);

        // Prefix survives a parse/serialize round trip.
        let reser = parse_frame(&bytes).unwrap().serialize();
        assert_eq!(extract_prefix(&reser, PREFIX_LEN).unwrap(), prefix);

        // Boundary: j equal to the frame length.
        let exact = sample_frame(8).serialize();
        assert_eq!(exact.len(), 58);
        assert_eq!(extract_prefix(&exact, 58).unwrap(), exact);

        assert_eq!(
            extract_prefix(&exact, 59),
            Err(CodecError::FrameTooShort { len: 58, needed: 59 })
        );
    }
}
