package pixelframe;

import pixelframe.ui.MainWindow;

public class PixelFrame {
    public static void main(String[] args) {
        MainWindow window = new MainWindow("pixelframe");
        window.show();
    }
}
