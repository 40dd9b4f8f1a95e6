package pixelframe.render;

public class SpriteTexture {
    private final byte[] pixels;
    private int handle = -1;

    public SpriteTexture(byte[] pixels) {
        this.pixels = pixels;
    }

    public void bind() {
        if (handle < 0) {
            handle = upload();
        }
    }

    private int upload() {
        return pixels.length;
    }
}
