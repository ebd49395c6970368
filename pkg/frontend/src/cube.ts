/** The DataHbEdron arrangement: six faces on a cube or a carousel ring.
 *
 * Both shapes carry the same face models; toggling only changes the 2.5D
 * arrangement and keeps the focused face. Faces are flat 2D renderings
 * positioned with CSS perspective transforms.
 */

export type Shape = "cube" | "carousel";

export interface Arrangement {
  shape: Shape;
  focus: number; // 1..6
}

const FACE_COUNT = 6;
const CUBE_HALF = 210; // px, half the face edge
const CAROUSEL_RADIUS = 360; // px

export class DataHbEdron {
  private state: Arrangement = { shape: "cube", focus: 1 };

  get arrangement(): Arrangement {
    return { ...this.state };
  }

  toggleShape(): Arrangement {
    this.state = {
      shape: this.state.shape === "cube" ? "carousel" : "cube",
      focus: this.state.focus,
    };
    return this.arrangement;
  }

  focusFace(index: number): Arrangement {
    if (index < 1 || index > FACE_COUNT) {
      throw new Error(`face index out of range: ${index}`);
    }
    this.state = { ...this.state, focus: index };
    return this.arrangement;
  }

  rotate(step: 1 | -1): Arrangement {
    const next = ((this.state.focus - 1 + step + FACE_COUNT) % FACE_COUNT) + 1;
    return this.focusFace(next);
  }

  /** Arrow keys rotate; t toggles the shape. Returns null for other keys. */
  handleKey(key: string): Arrangement | null {
    if (key === "ArrowRight") {
      return this.rotate(1);
    }
    if (key === "ArrowLeft") {
      return this.rotate(-1);
    }
    if (key === "t") {
      return this.toggleShape();
    }
    return null;
  }

  /** CSS transform placing one face in the current arrangement. */
  faceTransform(index: number): string {
    if (this.state.shape === "carousel") {
      const angle = ((index - this.state.focus + FACE_COUNT) % FACE_COUNT) * 60;
      return `rotateY(${angle}deg) translateZ(${CAROUSEL_RADIUS}px)`;
    }
    // cube: faces 1..4 around the Y axis, 5 on top, 6 below
    switch (index) {
      case 5:
        return `rotateX(90deg) translateZ(${CUBE_HALF}px)`;
      case 6:
        return `rotateX(-90deg) translateZ(${CUBE_HALF}px)`;
      default: {
        const angle = (index - 1) * 90;
        return `rotateY(${angle}deg) translateZ(${CUBE_HALF}px)`;
      }
    }
  }

  /** Transform for the whole assembly so the focused face fronts the viewer. */
  sceneTransform(): string {
    if (this.state.shape === "carousel") {
      return "translateZ(-360px)";
    }
    switch (this.state.focus) {
      case 5:
        return `translateZ(-${CUBE_HALF}px) rotateX(-90deg)`;
      case 6:
        return `translateZ(-${CUBE_HALF}px) rotateX(90deg)`;
      default:
        return `translateZ(-${CUBE_HALF}px) rotateY(${-(this.state.focus - 1) * 90}deg)`;
    }
  }
}
