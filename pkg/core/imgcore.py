import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Tuple, Union

import numpy as np

from config import (
    CHANNEL_MAX,
    ERROR_IMAGE_RANGE,
    ERROR_IMAGE_SHAPE,
    ERROR_PPM_HEADER,
    ERROR_PPM_MAXVAL,
    ERROR_PPM_TRUNCATED,
    ERROR_WINDOW_COORDS,
    ERROR_WINDOW_SIZE,
    LOG_IMAGE_LOADED,
    LOG_IMAGE_SAVED,
    LOG_PPM_TRAILING,
    PPM_MAGIC,
    PPM_MAXVAL,
    WINDOW_CENTER,
    WINDOW_SIZE,
)
from core.errors import (
    ImageFormatError,
    PpmHeaderError,
    PpmMaxvalError,
    PpmTruncatedError,
)

PathLike = Union[str, Path]
Rgb = Tuple[int, int, int]

_PNM_WHITESPACE = b" \t\n\r\v\f"


@dataclass(frozen=True, eq=False)
class RgbImage:
    """
    Растровое RGB-изображение, 8 бит на канал.

    Пиксели хранятся построчно в массиве формы (height, width, 3);
    после создания массив доступен только для чтения.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.data)
        if arr.ndim != 3 or arr.shape[2] != 3 or 0 in arr.shape[:2]:
            raise ImageFormatError(ERROR_IMAGE_SHAPE.format(arr.shape))
        if arr.dtype != np.uint8:
            if arr.size and (arr.min() < 0 or arr.max() > CHANNEL_MAX):
                raise ImageFormatError(ERROR_IMAGE_RANGE)
            arr = arr.astype(np.uint8)
        arr = np.array(arr, dtype=np.uint8, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "data", arr)

    @classmethod
    def from_pixels(
        cls, width: int, height: int, pixels: Iterable[Sequence[int]]
    ) -> "RgbImage":
        flat = np.array(list(pixels), dtype=np.int64)
        if flat.shape != (width * height, 3):
            raise ImageFormatError(ERROR_IMAGE_SHAPE.format(flat.shape))
        return cls(flat.reshape(height, width, 3))

    @classmethod
    def constant(cls, width: int, height: int, color: Sequence[int]):
        arr = np.empty((height, width, 3), dtype=np.int64)
        arr[...] = np.asarray(color, dtype=np.int64)
        return cls(arr)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def pixel_count(self) -> int:
        return self.width * self.height

    def pixel(self, x: int, y: int) -> Rgb:
        r, g, b = self.data[y, x]
        return int(r), int(g), int(b)

    def to_bytes(self) -> bytes:
        return self.data.tobytes()

    def padded(self) -> np.ndarray:
        """Копия в float64 с рамкой в один пиксель (повтор краёв)."""
        return np.pad(
            self.data.astype(np.float64), ((1, 1), (1, 1), (0, 0)), mode="edge"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, RgbImage):
            return NotImplemented
        return self.data.shape == other.data.shape and bool(
            np.array_equal(self.data, other.data)
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class Window:
    """Окно 3x3 в построчном порядке, центр имеет индекс 4."""

    pixels: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.pixels, dtype=np.int64).reshape(-1, 3)
        if arr.shape[0] != WINDOW_SIZE:
            raise ImageFormatError(
                ERROR_WINDOW_SIZE.format(WINDOW_SIZE, arr.shape[0])
            )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "pixels", arr)

    @property
    def center(self) -> Rgb:
        r, g, b = self.pixels[WINDOW_CENTER]
        return int(r), int(g), int(b)

    def as_float(self) -> np.ndarray:
        return np.ascontiguousarray(self.pixels, dtype=np.float64)

    def __len__(self) -> int:
        return WINDOW_SIZE

    def __getitem__(self, index: int) -> Rgb:
        r, g, b = self.pixels[index]
        return int(r), int(g), int(b)


def window_at(img: RgbImage, x: int, y: int) -> Window:
    """
    Возвращает окрестность 3x3 пикселя (x, y).
    Координаты за границей изображения заменяются ближайшими краевыми.
    """
    if not (0 <= x < img.width and 0 <= y < img.height):
        raise IndexError(
            ERROR_WINDOW_COORDS.format(x, y, img.width, img.height)
        )
    rows = np.clip(np.arange(y - 1, y + 2), 0, img.height - 1)
    cols = np.clip(np.arange(x - 1, x + 2), 0, img.width - 1)
    return Window(img.data[np.ix_(rows, cols)].reshape(WINDOW_SIZE, 3))


def _skip_separators(raw: bytes, pos: int) -> int:
    while pos < len(raw):
        if raw[pos] in _PNM_WHITESPACE:
            pos += 1
        elif raw[pos] == ord("#"):
            end = raw.find(b"\n", pos)
            if end < 0:
                raise PpmHeaderError(
                    ERROR_PPM_HEADER.format("комментарий без конца строки")
                )
            pos = end + 1
        else:
            break
    return pos


def _parse_header(raw: bytes) -> Tuple[int, int, int, int]:
    """Разбирает заголовок P6; возвращает ширину, высоту, maxval и смещение данных."""
    if raw[:2] != PPM_MAGIC or len(raw) < 3 or raw[2] not in _PNM_WHITESPACE:
        raise PpmHeaderError(ERROR_PPM_HEADER.format(raw[:2]))
    pos = 2
    fields = []
    while len(fields) < 3:
        pos = _skip_separators(raw, pos)
        start = pos
        while (
            pos < len(raw)
            and raw[pos] not in _PNM_WHITESPACE
            and raw[pos] != ord("#")
        ):
            pos += 1
        token = raw[start:pos]
        if not token or not token.isdigit():
            raise PpmHeaderError(ERROR_PPM_HEADER.format(token or "конец файла"))
        fields.append(int(token))
    if pos >= len(raw) or raw[pos] not in _PNM_WHITESPACE:
        raise PpmHeaderError(ERROR_PPM_HEADER.format("нет разделителя"))
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise PpmHeaderError(ERROR_PPM_HEADER.format(f"{width}x{height}"))
    return width, height, maxval, pos + 1


def load_ppm(path: PathLike) -> RgbImage:
    """Читает двоичный PPM (P6) с maxval 255."""
    raw = Path(path).read_bytes()
    width, height, maxval, offset = _parse_header(raw)
    if maxval != PPM_MAXVAL:
        raise PpmMaxvalError(ERROR_PPM_MAXVAL.format(maxval))
    expected = width * height * 3
    payload = raw[offset:offset + expected]
    if len(payload) < expected:
        raise PpmTruncatedError(
            ERROR_PPM_TRUNCATED.format(expected, len(payload))
        )
    trailing = len(raw) - offset - expected
    if trailing:
        logging.warning(LOG_PPM_TRAILING.format(path, trailing))
    data = np.frombuffer(payload, dtype=np.uint8).reshape(height, width, 3)
    logging.debug(LOG_IMAGE_LOADED.format(path, width, height))
    return RgbImage(data)


def save_ppm(img: RgbImage, path: PathLike) -> None:
    header = f"P6\n{img.width} {img.height}\n{PPM_MAXVAL}\n".encode("ascii")
    with open(path, "wb") as f:
        f.write(header)
        f.write(img.to_bytes())
    logging.debug(LOG_IMAGE_SAVED.format(path, img.width, img.height))


def _is_png(path: PathLike) -> bool:
    return Path(path).suffix.lower() == ".png"


def load_image(path: PathLike) -> RgbImage:
    """PPM по умолчанию, PNG при расширении .png."""
    if not _is_png(path):
        return load_ppm(path)
    from PIL import Image

    with Image.open(path) as im:
        return RgbImage(np.asarray(im.convert("RGB")))


def save_image(img: RgbImage, path: PathLike) -> None:
    if not _is_png(path):
        save_ppm(img, path)
        return
    from PIL import Image

    Image.fromarray(np.ascontiguousarray(img.data), "RGB").save(path)
